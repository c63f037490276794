#include "cm/fq.hpp"

#include <sstream>

#include "cm/error.hpp"

namespace cm {

FqField FqField::make(uint64_t p, int k) {
    check_field_prime(p);
    require(k >= 1 && k <= kMaxExtensionDegree, ErrorKind::Unsupported,
            "extension degree must be in [1, " + std::to_string(kMaxExtensionDegree) + "]");
    const uint32_t pp = static_cast<uint32_t>(p);
    // Enumerate monic polynomials of degree k in increasing order of
    // sum c_i p^i, i.e. lexicographically from the coefficient of t^{k-1} down.
    FpPoly f(k + 1, 0);
    f[k] = 1;
    while (true) {
        if (fpoly::is_irreducible(f, pp)) return FqField(pp, f);
        int i = 0;
        while (i < k && ++f[i] == pp) f[i++] = 0;
        if (i == k) break;
    }
    fail(ErrorKind::Internal, "no irreducible polynomial found");
}

FqField::FqField(uint32_t p, FpPoly modulus) : p_(p), k_(fpoly::degree(modulus)), modulus_(std::move(modulus)) {
    check_field_prime(p);
    fpoly::trim(modulus_);
    k_ = fpoly::degree(modulus_);
    require(k_ >= 1 && k_ <= kMaxExtensionDegree, ErrorKind::Unsupported, "unsupported extension degree");
    require(modulus_.back() == 1, ErrorKind::InvalidInput, "defining polynomial must be monic");
    require(fpoly::is_irreducible(modulus_, p_), ErrorKind::InvalidInput, "defining polynomial is reducible");
}

BigInt FqField::order() const {
    BigInt q;
    mpz_ui_pow_ui(q.get_mpz_t(), p_, k_);
    return q;
}

uint64_t FqField::order_u64() const {
    unsigned __int128 q = 1;
    for (int i = 0; i < k_; ++i) {
        q *= p_;
        if (q > static_cast<unsigned __int128>(UINT64_MAX)) return 0;
    }
    return static_cast<uint64_t>(q);
}

FqElem FqField::from_int(int64_t v) const {
    FqElem r;
    r.c[0] = fp::from_int(v, p_);
    return r;
}

FqElem FqField::from_bigint(const BigInt& v) const {
    BigInt m = v % p_;
    if (m < 0) m += p_;
    FqElem r;
    r.c[0] = static_cast<uint32_t>(m.get_ui());
    return r;
}

FqElem FqField::from_coords(const std::vector<uint32_t>& coords) const {
    require(static_cast<int>(coords.size()) <= k_, ErrorKind::InvalidInput, "too many coordinates");
    FqElem r;
    for (std::size_t i = 0; i < coords.size(); ++i) r.c[i] = coords[i] % p_;
    return r;
}

FqElem FqField::gen() const {
    if (k_ == 1) return from_int(-static_cast<int64_t>(modulus_[0]));
    FqElem r;
    r.c[1] = 1;
    return r;
}

bool FqField::in_prime_field(const FqElem& a) const {
    for (int i = 1; i < k_; ++i)
        if (a.c[i]) return false;
    return true;
}

FqElem FqField::add(const FqElem& a, const FqElem& b) const {
    FqElem r;
    for (int i = 0; i < k_; ++i) r.c[i] = fp::add(a.c[i], b.c[i], p_);
    return r;
}

FqElem FqField::sub(const FqElem& a, const FqElem& b) const {
    FqElem r;
    for (int i = 0; i < k_; ++i) r.c[i] = fp::sub(a.c[i], b.c[i], p_);
    return r;
}

FqElem FqField::neg(const FqElem& a) const {
    FqElem r;
    for (int i = 0; i < k_; ++i) r.c[i] = fp::neg(a.c[i], p_);
    return r;
}

FqElem FqField::mul_scalar(const FqElem& a, uint32_t s) const {
    FqElem r;
    for (int i = 0; i < k_; ++i) r.c[i] = fp::mul(a.c[i], s, p_);
    return r;
}

FqElem FqField::mul(const FqElem& a, const FqElem& b) const {
    FqElem r;
    if (k_ == 1) {
        r.c[0] = fp::mul(a.c[0], b.c[0], p_);
        return r;
    }
    // p < 2^28 so each product is < 2^56 and up to 256 of them fit in 64 bits.
    uint64_t acc[2 * kMaxExtensionDegree - 1] = {};
    for (int i = 0; i < k_; ++i) {
        if (!a.c[i]) continue;
        for (int j = 0; j < k_; ++j) acc[i + j] += static_cast<uint64_t>(a.c[i]) * b.c[j];
    }
    uint32_t t[2 * kMaxExtensionDegree - 1];
    for (int i = 0; i < 2 * k_ - 1; ++i) t[i] = static_cast<uint32_t>(acc[i] % p_);
    for (int i = 2 * k_ - 2; i >= k_; --i) {
        const uint32_t c = t[i];
        if (!c) continue;
        const uint32_t nc = p_ - c;
        for (int j = 0; j < k_; ++j) t[i - k_ + j] = fp::add(t[i - k_ + j], fp::mul(nc, modulus_[j], p_), p_);
    }
    for (int i = 0; i < k_; ++i) r.c[i] = t[i];
    return r;
}

FqElem FqField::inv(const FqElem& a) const {
    require(!is_zero(a), ErrorKind::InvalidInput, "inverse of zero in F_q");
    if (k_ == 1) {
        FqElem r;
        r.c[0] = fp::inv(a.c[0], p_);
        return r;
    }
    // Extended Euclid in F_p[t]: track s with s*a = r (mod modulus).
    FpPoly r0 = modulus_, r1(a.c.begin(), a.c.begin() + k_);
    fpoly::trim(r1);
    FpPoly s0{}, s1{1};
    while (fpoly::degree(r1) > 0) {
        FpPoly q, rr;
        fpoly::divrem(r0, r1, q, rr, p_);
        FpPoly ns = fpoly::sub(s0, fpoly::mul(q, s1, p_), p_);
        r0 = std::move(r1);
        r1 = std::move(rr);
        s0 = std::move(s1);
        s1 = std::move(ns);
    }
    const FpPoly inv_poly = fpoly::rem(fpoly::scale(s1, fp::inv(r1[0], p_), p_), modulus_, p_);
    FqElem r;
    for (std::size_t i = 0; i < inv_poly.size(); ++i) r.c[i] = inv_poly[i];
    return r;
}

FqElem FqField::pow(const FqElem& a, uint64_t e) const {
    FqElem result = one(), base = a;
    while (e) {
        if (e & 1) result = mul(result, base);
        e >>= 1;
        if (e) base = mul(base, base);
    }
    return result;
}

FqElem FqField::pow(const FqElem& a, const BigInt& e) const {
    require(e >= 0, ErrorKind::InvalidInput, "negative exponent");
    FqElem result = one();
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = mul(result, result);
        if (mpz_tstbit(e.get_mpz_t(), i)) result = mul(result, a);
    }
    return result;
}

FqElem FqField::element_at(uint64_t index) const {
    FqElem r;
    for (int i = 0; i < k_; ++i) {
        r.c[i] = static_cast<uint32_t>(index % p_);
        index /= p_;
    }
    return r;
}

uint64_t FqField::index_of(const FqElem& a) const {
    uint64_t idx = 0;
    for (int i = k_ - 1; i >= 0; --i) idx = idx * p_ + a.c[i];
    return idx;
}

std::string FqField::format(const FqElem& a) const {
    if (in_prime_field(a)) return std::to_string(a.c[0]);
    std::ostringstream os;
    bool first = true;
    for (int i = k_ - 1; i >= 0; --i) {
        if (!a.c[i]) continue;
        if (!first) os << '+';
        first = false;
        if (i == 0 || a.c[i] != 1) os << a.c[i];
        if (i > 0) {
            if (a.c[i] != 1) os << '*';
            os << 't';
            if (i > 1) os << '^' << i;
        }
    }
    return os.str();
}

}  // namespace cm
