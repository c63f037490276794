#include "cm/qforms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "cm/error.hpp"
#include "cm/fp.hpp"

namespace cm {

namespace {

using i128 = __int128;

int64_t floor_div(int64_t a, int64_t b) {
    int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

int64_t mod_pos(i128 a, int64_t m) {
    i128 r = a % m;
    if (r < 0) r += m;
    return static_cast<int64_t>(r);
}

// u*a + v*b = g >= 0
int64_t xgcd(int64_t a, int64_t b, int64_t& u, int64_t& v) {
    int64_t r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        const int64_t q = floor_div(r0, r1);
        std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
        std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
        std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
    }
    if (r0 < 0) {
        r0 = -r0;
        s0 = -s0;
        t0 = -t0;
    }
    u = s0;
    v = t0;
    return r0;
}

bool squarefree(uint64_t n) {
    for (uint64_t q = 2; q * q <= n; ++q)
        if (n % (q * q) == 0) return false;
    return true;
}

int64_t c_from(int64_t a, int64_t b, int64_t D) {
    const i128 num = static_cast<i128>(b) * b - D;
    require(num % (4 * static_cast<i128>(a)) == 0, ErrorKind::Internal, "form coefficient not integral");
    return static_cast<int64_t>(num / (4 * static_cast<i128>(a)));
}

}  // namespace

bool is_discriminant(int64_t D) { return D < 0 && (mod_pos(D, 4) == 0 || mod_pos(D, 4) == 1); }

bool is_fundamental_discriminant(int64_t D) {
    if (!is_discriminant(D)) return false;
    if (mod_pos(D, 4) == 1) return squarefree(static_cast<uint64_t>(-D));
    const int64_t m = D / 4;
    const int64_t r = mod_pos(m, 4);
    return (r == 2 || r == 3) && squarefree(static_cast<uint64_t>(-m));
}

OrderSpec OrderSpec::from_discriminant(int64_t D) {
    require(is_discriminant(D), ErrorKind::InvalidInput, "not a negative discriminant: " + std::to_string(D));
    int64_t best = 1;
    const uint64_t n = static_cast<uint64_t>(-D);
    for (uint64_t f = 1; f * f <= n; ++f) {
        if (n % (f * f)) continue;
        const int64_t d = D / static_cast<int64_t>(f * f);
        if (is_fundamental_discriminant(d)) best = static_cast<int64_t>(f);
    }
    return OrderSpec{D, D / (best * best), best};
}

std::string QuadForm::to_string() const {
    return std::to_string(a) + " " + std::to_string(b) + " " + std::to_string(c);
}

QuadForm reduce_form(const QuadForm& g) {
    const int64_t D = g.discriminant();
    require(D < 0 && g.a > 0, ErrorKind::InvalidInput, "form is not positive definite");
    require(std::gcd(std::gcd(g.a, g.b), g.c) == 1, ErrorKind::InvalidInput, "form is not primitive");
    int64_t a = g.a, b = g.b, c = g.c;
    auto normalize = [&] {
        // b into (-a, a]
        const int64_t k = floor_div(a - b, 2 * a);
        b += 2 * k * a;
        c = c_from(a, b, D);
    };
    normalize();
    while (a > c) {
        std::swap(a, c);
        b = -b;
        normalize();
    }
    if (a == c && b < 0) b = -b;
    return {a, b, c};
}

QuadForm compose(const QuadForm& f1, const QuadForm& f2) {
    const int64_t D = f1.discriminant();
    require(D == f2.discriminant(), ErrorKind::InvalidInput, "composition of forms with different discriminants");
    QuadForm x = f1, y = f2;
    if (x.a > y.a) std::swap(x, y);
    const int64_t a1 = x.a, b1 = x.b, a2 = y.a, b2 = y.b, c2 = y.c;
    const int64_t s = (b1 + b2) / 2, n = b2 - s;
    int64_t y1, d;
    if (a2 % a1 == 0) {
        y1 = 0;
        d = a1;
    } else {
        int64_t u, v;
        d = xgcd(a2, a1, u, v);
        y1 = u;
    }
    int64_t x2, y2, d1;
    if (s % d == 0) {
        y2 = -1;
        x2 = 0;
        d1 = d;
    } else {
        d1 = xgcd(s, d, x2, y2);
        y2 = -y2;
    }
    const int64_t v1 = a1 / d1, v2 = a2 / d1;
    const int64_t r = mod_pos(static_cast<i128>(y1) * y2 * n - static_cast<i128>(x2) * c2, v1);
    const int64_t b3 = b2 + 2 * v2 * r;
    const int64_t a3 = v1 * v2;
    return reduce_form({a3, b3, c_from(a3, b3, D)});
}

ClassGroup::ClassGroup(int64_t D) : order_(OrderSpec::from_discriminant(D)) {
    const int64_t amax = static_cast<int64_t>(std::sqrt(static_cast<double>(-D) / 3.0)) + 1;
    for (int64_t a = 1; a <= amax; ++a) {
        for (int64_t b = -a + 1; b <= a; ++b) {
            if (mod_pos(b - D, 2) != 0) continue;
            const i128 num = static_cast<i128>(b) * b - D;
            if (num % (4 * a) != 0) continue;
            const int64_t c = static_cast<int64_t>(num / (4 * a));
            if (c < a) continue;
            if (a == c && b < 0) continue;
            if (std::gcd(std::gcd(a, b), c) != 1) continue;
            forms_.push_back({a, b, c});
        }
    }
    std::sort(forms_.begin(), forms_.end(),
              [](const QuadForm& u, const QuadForm& v) { return std::tie(u.a, u.b) < std::tie(v.a, v.b); });
    std::map<QuadForm, int> index;
    for (int i = 0; i < size(); ++i) index[forms_[i]] = i;
    const std::size_t h = forms_.size();
    table_.resize(h * h);
    inverse_.resize(h);
    for (std::size_t i = 0; i < h; ++i) {
        for (std::size_t j = i; j < h; ++j) {
            const int k = index.at(compose(forms_[i], forms_[j]));
            table_[i * h + j] = table_[j * h + i] = k;
        }
        inverse_[i] = index.at(reduce_form({forms_[i].a, -forms_[i].b, forms_[i].c}));
    }
}

int ClassGroup::index_of(const QuadForm& g) const {
    require(g.discriminant() == order_.D, ErrorKind::InvalidInput, "form has the wrong discriminant");
    const QuadForm r = reduce_form(g);
    auto it = std::lower_bound(forms_.begin(), forms_.end(), r,
                               [](const QuadForm& u, const QuadForm& v) { return std::tie(u.a, u.b) < std::tie(v.a, v.b); });
    require(it != forms_.end() && *it == r, ErrorKind::Internal, "reduced form missing from class group");
    return static_cast<int>(it - forms_.begin());
}

int ClassGroup::pow(int i, int64_t e) const {
    const int64_t n = element_order(i);
    e %= n;
    if (e < 0) e += n;
    int r = 0, b = i;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

int ClassGroup::element_order(int i) const {
    int k = 1;
    for (int x = i; x != 0; x = mul(x, i)) ++k;
    return k;
}

int kronecker(int64_t D, uint64_t n) {
    require(n >= 1, ErrorKind::InvalidInput, "kronecker symbol needs n >= 1");
    // (D/2) by the mod-8 rule, then Jacobi for the odd part.
    int result = 1;
    while (n % 2 == 0) {
        n /= 2;
        const int64_t r = mod_pos(D, 8);
        if (r % 2 == 0) return 0;
        if (r == 3 || r == 5) result = -result;
    }
    if (n == 1) return result;
    uint64_t a = static_cast<uint64_t>(mod_pos(D, static_cast<int64_t>(n)));
    uint64_t m = n;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            if (m % 8 == 3 || m % 8 == 5) result = -result;
        }
        std::swap(a, m);
        if (a % 4 == 3 && m % 4 == 3) result = -result;
        a %= m;
    }
    return m == 1 ? result : 0;
}

namespace {

uint64_t sqrt_mod(uint64_t a, uint64_t p) {
    const uint32_t P = static_cast<uint32_t>(p);
    a %= p;
    if (a == 0) return 0;
    if (p % 4 == 3) return fp::pow(static_cast<uint32_t>(a), (p + 1) / 4, P);
    // Tonelli-Shanks
    uint64_t q = p - 1;
    int s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    uint32_t z = 2;
    while (fp::legendre(z, P) != -1) ++z;
    uint32_t c = fp::pow(z, q, P), t = fp::pow(static_cast<uint32_t>(a), q, P);
    uint32_t r = fp::pow(static_cast<uint32_t>(a), (q + 1) / 2, P);
    int m = s;
    while (t != 1) {
        int i = 0;
        for (uint32_t u = t; u != 1; u = fp::mul(u, u, P)) ++i;
        uint32_t b = c;
        for (int k = 0; k < m - i - 1; ++k) b = fp::mul(b, b, P);
        r = fp::mul(r, b, P);
        c = fp::mul(b, b, P);
        t = fp::mul(t, c, P);
        m = i;
    }
    return r;
}

}  // namespace

int64_t prime_form_b(uint64_t l, int64_t D) {
    require(is_prime(l), ErrorKind::InvalidInput, "not a prime: " + std::to_string(l));
    require(is_discriminant(D), ErrorKind::InvalidInput, "not a negative discriminant: " + std::to_string(D));
    require(kronecker(D, l) == 1, ErrorKind::Precondition,
            std::to_string(l) + " does not split in the order of discriminant " + std::to_string(D));
    require(l <= kMaxPrime, ErrorKind::Unsupported, "prime too large");
    const int64_t L = static_cast<int64_t>(l);
    int64_t b = -1;
    if (l == 2) {
        for (int64_t t = 0; t < 4; ++t)
            if (mod_pos(t * t - D, 8) == 0 && mod_pos(t - D, 2) == 0) {
                b = t;
                break;
            }
    } else {
        const int64_t r = static_cast<int64_t>(sqrt_mod(static_cast<uint64_t>(mod_pos(D, L)), l));
        for (int64_t cand : {r, L - r, r + L, 2 * L - r}) {
            cand = mod_pos(cand, 2 * L);
            if (mod_pos(cand - D, 2) != 0) continue;
            if (b < 0 || cand < b) b = cand;
        }
    }
    require(b >= 0, ErrorKind::Internal, "no square root found");
    return b;
}

QuadForm prime_class(uint64_t l, int64_t D) {
    const int64_t b = prime_form_b(l, D);
    const int64_t L = static_cast<int64_t>(l);
    return reduce_form({L, b, c_from(L, b, D)});
}

uint64_t find_split_prime(int64_t D1, int64_t D2, const std::set<uint64_t>& exclude, uint64_t start, uint64_t bound) {
    const OrderSpec o1 = OrderSpec::from_discriminant(D1), o2 = OrderSpec::from_discriminant(D2);
    for (uint64_t l = std::max<uint64_t>(start, 2); l <= bound; ++l) {
        if (!is_prime(l) || exclude.count(l)) continue;
        if (o1.f % static_cast<int64_t>(l) == 0 || o2.f % static_cast<int64_t>(l) == 0) continue;
        if (kronecker(D1, l) == 1 && kronecker(D2, l) == 1) return l;
    }
    fail(ErrorKind::NotFound, "no split prime below " + std::to_string(bound));
}

int unit_count(int64_t D) {
    if (D == -3) return 6;
    if (D == -4) return 4;
    return 2;
}

}  // namespace cm
