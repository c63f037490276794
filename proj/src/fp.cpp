#include "cm/fp.hpp"

#include <algorithm>
#include <string>

#include "cm/error.hpp"
#include "cm/kernels.hpp"

namespace cm {

namespace {

uint64_t mulmod64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

uint64_t powmod64(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod64(r, a, m);
        a = mulmod64(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Deterministic witness set for 64-bit integers.
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

uint64_t next_prime(uint64_t n) {
    if (n <= 2) return 2;
    while (!is_prime(n)) ++n;
    return n;
}

std::vector<uint64_t> prime_factors(uint64_t n) {
    std::vector<uint64_t> out;
    for (uint64_t q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

void check_field_prime(uint64_t p) {
    require(is_prime(p), ErrorKind::InvalidInput, std::to_string(p) + " is not prime");
    require(p <= kMaxPrime, ErrorKind::InvalidInput, "field characteristic must be below 2^28");
}

namespace fp {

uint32_t pow(uint32_t a, uint64_t e, uint32_t p) { return static_cast<uint32_t>(powmod64(a, e, p)); }

uint32_t inv(uint32_t a, uint32_t p) {
    require(a % p != 0, ErrorKind::InvalidInput, "inverse of zero in F_p");
    int64_t t = 0, nt = 1, r = p, nr = a % p;
    while (nr) {
        int64_t q = r / nr;
        std::swap(t, nt);
        nt -= q * t;
        std::swap(r, nr);
        nr -= q * r;
    }
    return static_cast<uint32_t>(t < 0 ? t + p : t);
}

uint32_t from_int(int64_t v, uint32_t p) {
    int64_t r = v % static_cast<int64_t>(p);
    return static_cast<uint32_t>(r < 0 ? r + p : r);
}

int legendre(uint32_t a, uint32_t p) {
    a %= p;
    if (a == 0) return 0;
    if (p == 2) return 1;
    return pow(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

}  // namespace fp

namespace fpoly {

void trim(FpPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

FpPoly from_ints(std::span<const int64_t> coeffs, uint32_t p) {
    FpPoly f(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) f[i] = fp::from_int(coeffs[i], p);
    trim(f);
    return f;
}

FpPoly monomial(int deg, uint32_t c) {
    if (c == 0) return {};
    FpPoly f(deg + 1, 0);
    f[deg] = c;
    return f;
}

FpPoly add(const FpPoly& a, const FpPoly& b, uint32_t p) {
    FpPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = fp::add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0, p);
    trim(r);
    return r;
}

FpPoly sub(const FpPoly& a, const FpPoly& b, uint32_t p) {
    FpPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = fp::sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0, p);
    trim(r);
    return r;
}

FpPoly scale(const FpPoly& a, uint32_t s, uint32_t p) {
    if (s == 0) return {};
    FpPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = fp::mul(a[i], s, p);
    trim(r);
    return r;
}

void add_scaled(FpPoly& dst, const FpPoly& src, uint32_t s, int shift, uint32_t p) {
    if (s == 0 || src.empty()) return;
    if (dst.size() < src.size() + shift) dst.resize(src.size() + shift, 0);
    kernels::axpy_mod(std::span<uint32_t>(dst).subspan(shift, src.size()), src, s, p);
    trim(dst);
}

FpPoly mul(const FpPoly& a, const FpPoly& b, uint32_t p) {
    if (a.empty() || b.empty()) return {};
    const FpPoly& small = a.size() <= b.size() ? a : b;
    const FpPoly& large = a.size() <= b.size() ? b : a;
    FpPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < small.size(); ++i) {
        if (small[i] == 0) continue;
        kernels::axpy_mod(std::span<uint32_t>(r).subspan(i, large.size()), large, small[i], p);
    }
    trim(r);
    return r;
}

void divrem(const FpPoly& a, const FpPoly& b, FpPoly& q, FpPoly& r, uint32_t p) {
    require(!b.empty(), ErrorKind::InvalidInput, "polynomial division by zero");
    r = a;
    trim(r);
    const int db = degree(b);
    if (degree(r) < db) {
        q.clear();
        return;
    }
    q.assign(r.size() - b.size() + 1, 0);
    const uint32_t lead_inv = fp::inv(b.back(), p);
    FpPoly neg_b = scale(b, p - 1, p);
    for (int d = degree(r); d >= db; --d) {
        const uint32_t c = fp::mul(r[d], lead_inv, p);
        q[d - db] = c;
        if (c == 0) continue;
        kernels::axpy_mod(std::span<uint32_t>(r).subspan(d - db, b.size()), neg_b, c, p);
    }
    r.resize(db);
    trim(r);
    trim(q);
}

FpPoly rem(const FpPoly& a, const FpPoly& b, uint32_t p) {
    FpPoly q, r;
    divrem(a, b, q, r, p);
    return r;
}

FpPoly make_monic(const FpPoly& a, uint32_t p) {
    if (a.empty()) return a;
    return scale(a, fp::inv(a.back(), p), p);
}

FpPoly gcd(const FpPoly& a, const FpPoly& b, uint32_t p) {
    FpPoly x = a, y = b;
    trim(x);
    trim(y);
    while (!y.empty()) {
        FpPoly r = rem(x, y, p);
        x = std::move(y);
        y = std::move(r);
    }
    return make_monic(x, p);
}

FpPoly derivative(const FpPoly& a, uint32_t p) {
    if (a.size() <= 1) return {};
    FpPoly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = fp::mul(a[i], static_cast<uint32_t>(i % p), p);
    trim(r);
    return r;
}

FpPoly mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, uint32_t p) { return rem(mul(a, b, p), m, p); }

FpPoly powmod(const FpPoly& a, uint64_t e, const FpPoly& m, uint32_t p) {
    FpPoly result = rem(FpPoly{1}, m, p);
    FpPoly base = rem(a, m, p);
    while (e) {
        if (e & 1) result = mulmod(result, base, m, p);
        e >>= 1;
        if (e) base = mulmod(base, base, m, p);
    }
    return result;
}

uint32_t eval(const FpPoly& f, uint32_t x, uint32_t p) {
    uint64_t acc = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = (acc * x + *it) % p;
    return static_cast<uint32_t>(acc);
}

bool is_irreducible(const FpPoly& f, uint32_t p) {
    const int k = degree(f);
    if (k <= 0) return false;
    if (k == 1) return true;
    const FpPoly x{0, 1};
    // x^(p^i) mod f for i = 0..k
    std::vector<FpPoly> frob{rem(x, f, p)};
    for (int i = 1; i <= k; ++i) frob.push_back(powmod(frob.back(), p, f, p));
    if (sub(frob[k], frob[0], p) != FpPoly{}) return false;
    for (uint64_t r : prime_factors(static_cast<uint64_t>(k))) {
        const FpPoly g = gcd(sub(frob[k / r], frob[0], p), f, p);
        if (degree(g) != 0) return false;
    }
    return true;
}

}  // namespace fpoly

}  // namespace cm
