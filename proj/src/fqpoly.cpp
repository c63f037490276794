#include "cm/fqpoly.hpp"

#include <algorithm>

#include "cm/error.hpp"

namespace cm {

namespace fqpoly {

void trim(FqPoly& f) {
    while (!f.empty() && f.back() == FqElem{}) f.pop_back();
}

FqPoly from_fp(const FpPoly& f, const FqField& F) {
    FqPoly r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) r[i] = F.from_int(f[i]);
    trim(r);
    return r;
}

FqPoly linear(const FqElem& r, const FqField& F) { return {F.neg(r), F.one()}; }

FqPoly add(const FqPoly& a, const FqPoly& b, const FqField& F) {
    FqPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i >= a.size())
            r[i] = b[i];
        else if (i >= b.size())
            r[i] = a[i];
        else
            r[i] = F.add(a[i], b[i]);
    }
    trim(r);
    return r;
}

FqPoly sub(const FqPoly& a, const FqPoly& b, const FqField& F) {
    FqPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i >= a.size())
            r[i] = F.neg(b[i]);
        else if (i >= b.size())
            r[i] = a[i];
        else
            r[i] = F.sub(a[i], b[i]);
    }
    trim(r);
    return r;
}

FqPoly scale(const FqPoly& a, const FqElem& s, const FqField& F) {
    if (F.is_zero(s)) return {};
    FqPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], s);
    return r;
}

FqPoly mul(const FqPoly& a, const FqPoly& b, const FqField& F) {
    if (a.empty() || b.empty()) return {};
    FqPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (F.is_zero(a[i])) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    trim(r);
    return r;
}

void divrem(const FqPoly& a, const FqPoly& b, FqPoly& q, FqPoly& r, const FqField& F) {
    require(!b.empty(), ErrorKind::InvalidInput, "polynomial division by zero");
    r = a;
    trim(r);
    const int db = degree(b);
    if (degree(r) < db) {
        q.clear();
        return;
    }
    q.assign(r.size() - b.size() + 1, FqElem{});
    const FqElem lead_inv = F.inv(b.back());
    for (int d = degree(r); d >= db; --d) {
        if (F.is_zero(r[d])) continue;
        const FqElem c = F.mul(r[d], lead_inv);
        q[d - db] = c;
        for (int j = 0; j <= db; ++j) r[d - db + j] = F.sub(r[d - db + j], F.mul(c, b[j]));
    }
    r.resize(db);
    trim(r);
    trim(q);
}

FqPoly rem(const FqPoly& a, const FqPoly& b, const FqField& F) {
    FqPoly q, r;
    divrem(a, b, q, r, F);
    return r;
}

FqPoly quo(const FqPoly& a, const FqPoly& b, const FqField& F) {
    FqPoly q, r;
    divrem(a, b, q, r, F);
    return q;
}

FqPoly make_monic(const FqPoly& a, const FqField& F) {
    if (a.empty()) return a;
    return scale(a, F.inv(a.back()), F);
}

FqPoly gcd(const FqPoly& a, const FqPoly& b, const FqField& F) {
    FqPoly x = a, y = b;
    trim(x);
    trim(y);
    while (!y.empty()) {
        FqPoly r = rem(x, y, F);
        x = std::move(y);
        y = std::move(r);
    }
    return make_monic(x, F);
}

FqPoly derivative(const FqPoly& a, const FqField& F) {
    if (a.size() <= 1) return {};
    FqPoly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i)
        r[i - 1] = F.mul_scalar(a[i], static_cast<uint32_t>(i % F.characteristic()));
    trim(r);
    return r;
}

FqElem eval(const FqPoly& f, const FqElem& x, const FqField& F) {
    FqElem acc{};
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = F.add(F.mul(acc, x), *it);
    return acc;
}

FqPoly mulmod(const FqPoly& a, const FqPoly& b, const FqPoly& m, const FqField& F) {
    return rem(mul(a, b, F), m, F);
}

FqPoly powmod(const FqPoly& a, const BigInt& e, const FqPoly& m, const FqField& F) {
    FqPoly result = rem(FqPoly{F.one()}, m, F);
    const FqPoly base = rem(a, m, F);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (e == 0) return result;
    for (std::size_t i = bits; i-- > 0;) {
        result = mulmod(result, result, m, F);
        if (mpz_tstbit(e.get_mpz_t(), i)) result = mulmod(result, base, m, F);
    }
    return result;
}

FqPoly frobenius_x(const FqPoly& m, const FqField& F) {
    FqPoly r = rem(FqPoly{FqElem{}, F.one()}, m, F);
    const BigInt p = F.characteristic();
    for (int i = 0; i < F.degree(); ++i) r = powmod(r, p, m, F);
    return r;
}

FqElem resultant(const FqPoly& a0, const FqPoly& b0, const FqField& F) {
    FqPoly a = a0, b = b0;
    trim(a);
    trim(b);
    if (a.empty() || b.empty()) return F.zero();
    FqElem result = F.one();
    while (true) {
        const int m = degree(a), n = degree(b);
        if (n == 0) return F.mul(result, F.pow(b[0], static_cast<uint64_t>(m)));
        FqPoly r = rem(a, b, F);
        if (r.empty()) return F.zero();
        const int k = degree(r);
        FqElem factor = F.pow(b.back(), static_cast<uint64_t>(m - k));
        if ((static_cast<int64_t>(m) * n) % 2) factor = F.neg(factor);
        result = F.mul(result, factor);
        a = std::move(b);
        b = std::move(r);
    }
}

FqElem resultant(const FqPoly& a0, int m, const FqPoly& b0, int n, const FqField& F) {
    FqPoly a = a0, b = b0;
    trim(a);
    trim(b);
    const int da = degree(a), db = degree(b);
    require(da <= m && db <= n, ErrorKind::InvalidInput, "formal degree below actual degree");
    if (m == 0 && n == 0) return F.one();
    if (a.empty() || b.empty()) return F.zero();
    if (da < m && db < n) return F.zero();
    if (da < m) {
        // Res_{m,n} = (-1)^{n(m-da)} lc(b)^{m-da} Res_{da,n}
        FqElem f = F.pow(b.back(), static_cast<uint64_t>(m - da));
        if ((static_cast<int64_t>(n) * (m - da)) % 2) f = F.neg(f);
        return F.mul(f, resultant(a, b, F));
    }
    if (db < n) {
        // Res_{m,n} = lc(a)^{n-db} Res_{m,db}
        return F.mul(F.pow(a.back(), static_cast<uint64_t>(n - db)), resultant(a, b, F));
    }
    return resultant(a, b, F);
}

FqPoly interpolate(std::span<const FqElem> xs, std::span<const FqElem> ys, const FqField& F) {
    require(xs.size() == ys.size(), ErrorKind::InvalidInput, "interpolation size mismatch");
    const std::size_t n = xs.size();
    // Newton divided differences.
    std::vector<FqElem> coef(ys.begin(), ys.end());
    for (std::size_t j = 1; j < n; ++j) {
        for (std::size_t i = n - 1; i >= j; --i) {
            const FqElem den = F.sub(xs[i], xs[i - j]);
            require(!F.is_zero(den), ErrorKind::InvalidInput, "interpolation nodes not distinct");
            coef[i] = F.div(F.sub(coef[i], coef[i - 1]), den);
        }
    }
    FqPoly result;
    for (std::size_t i = n; i-- > 0;) {
        // result = result * (X - xs[i]) + coef[i]
        FqPoly next(result.size() + 1);
        for (std::size_t d = 0; d < result.size(); ++d) {
            next[d + 1] = F.add(next[d + 1], result[d]);
            next[d] = F.sub(next[d], F.mul(result[d], xs[i]));
        }
        if (next.empty()) next.resize(1);
        next[0] = F.add(next[0], coef[i]);
        trim(next);
        result = std::move(next);
    }
    return result;
}

namespace {

FqPoly pth_root(const FqPoly& f, const FqField& F) {
    const uint32_t p = F.characteristic();
    FqPoly r((f.size() - 1) / p + 1);
    // a^(1/p) = a^(p^(k-1)) in F_{p^k}
    BigInt e;
    mpz_ui_pow_ui(e.get_mpz_t(), p, F.degree() - 1);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.pow(f[i * p], e);
    trim(r);
    return r;
}

// Splits g, a monic product of distinct linear factors, into its roots.
void split_linear(const FqPoly& g, const FqField& F, Rng& rng, std::vector<FqElem>& out) {
    const int n = degree(g);
    if (n <= 0) return;
    if (n == 1) {
        out.push_back(F.neg(g[0]));
        return;
    }
    const uint64_t q = F.order_u64();
    if (q != 0 && q <= 512) {
        for (uint64_t i = 0; i < q; ++i) {
            const FqElem x = F.element_at(i);
            if (F.is_zero(eval(g, x, F))) out.push_back(x);
        }
        return;
    }
    const uint32_t p = F.characteristic();
    const BigInt half = (F.order() - 1) / 2;
    std::uniform_int_distribution<uint32_t> coord(0, p - 1);
    while (true) {
        FqPoly h(n);
        for (auto& c : h)
            for (int i = 0; i < F.degree(); ++i) c.c[i] = coord(rng);
        trim(h);
        if (degree(h) <= 0) continue;
        FqPoly w;
        if (p == 2) {
            // absolute trace map to F_2
            FqPoly t = h;
            w = h;
            for (int i = 1; i < F.degree(); ++i) {
                t = mulmod(t, t, g, F);
                w = add(w, t, F);
            }
        } else {
            w = sub(powmod(h, half, g, F), FqPoly{F.one()}, F);
        }
        FqPoly d = gcd(w, g, F);
        if (degree(d) > 0 && degree(d) < n) {
            split_linear(d, F, rng, out);
            split_linear(quo(g, d, F), F, rng, out);
            return;
        }
    }
}

}  // namespace

FqPoly squarefree_part(const FqPoly& f0, const FqField& F) {
    FqPoly f = make_monic(f0, F);
    require(!f.empty(), ErrorKind::InvalidInput, "squarefree part of zero polynomial");
    if (degree(f) == 0) return FqPoly{F.one()};
    const FqPoly df = derivative(f, F);
    if (df.empty()) return squarefree_part(pth_root(f, F), F);
    FqPoly g = gcd(f, df, F);
    const FqPoly c = quo(f, g, F);
    while (true) {
        const FqPoly d = gcd(g, c, F);
        if (degree(d) <= 0) break;
        g = quo(g, d, F);
    }
    if (degree(g) <= 0) return c;
    return make_monic(mul(c, squarefree_part(pth_root(g, F), F), F), F);
}

std::vector<RootMultiplicity> roots_with_multiplicity(const FqPoly& f0, const FqField& F, Rng& rng) {
    FqPoly f = f0;
    trim(f);
    require(!f.empty(), ErrorKind::InvalidInput, "roots of the zero polynomial");
    std::vector<RootMultiplicity> out;
    if (degree(f) == 0) return out;
    f = make_monic(f, F);
    const FqPoly xq = frobenius_x(f, F);
    const FqPoly g = gcd(sub(xq, FqPoly{FqElem{}, F.one()}, F), f, F);
    std::vector<FqElem> roots;
    split_linear(g, F, rng, roots);
    std::sort(roots.begin(), roots.end());
    for (const FqElem& r : roots) {
        int mult = 0;
        FqPoly cur = f;
        while (true) {
            FqPoly q, rr;
            divrem(cur, linear(r, F), q, rr, F);
            if (!rr.empty()) break;
            ++mult;
            cur = std::move(q);
        }
        out.push_back({r, mult});
    }
    return out;
}

std::vector<FqElem> distinct_roots(const FqPoly& f, const FqField& F, Rng& rng) {
    FqPoly g = f;
    trim(g);
    require(!g.empty(), ErrorKind::InvalidInput, "roots of the zero polynomial");
    if (degree(g) == 0) return {};
    g = make_monic(g, F);
    const FqPoly xq = frobenius_x(g, F);
    const FqPoly h = gcd(sub(xq, FqPoly{FqElem{}, F.one()}, F), g, F);
    std::vector<FqElem> roots;
    split_linear(h, F, rng, roots);
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::vector<FqPoly> distinct_degree_factorization(const FqPoly& f0, const FqField& F) {
    FqPoly f = make_monic(f0, F);
    std::vector<FqPoly> out(std::max(1, degree(f) + 1), FqPoly{F.one()});
    if (degree(f) <= 0) return out;
    const FqPoly x{FqElem{}, F.one()};
    FqPoly h = rem(x, f, F);
    const BigInt q = F.order();
    for (int d = 1; degree(f) >= 2 * d; ++d) {
        h = powmod(h, q, f, F);
        FqPoly g = gcd(sub(h, x, F), f, F);
        if (degree(g) > 0) {
            out[d] = g;
            f = quo(f, g, F);
            h = rem(h, f, F);
        }
    }
    if (degree(f) > 0) out[degree(f)] = f;
    return out;
}

}  // namespace fqpoly

std::vector<FqElem> poly_roots(const FqPoly& f, const FqField& F, Rng& rng) {
    std::vector<FqElem> out;
    for (const auto& [r, m] : fqpoly::roots_with_multiplicity(f, F, rng))
        for (int i = 0; i < m; ++i) out.push_back(r);
    return out;
}

}  // namespace cm
