#pragma once

// Finite fields F_{p^k} = F_p[t]/(m(t)) with a deterministic defining polynomial.

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "cm/fp.hpp"

namespace cm {

using BigInt = mpz_class;

inline constexpr int kMaxExtensionDegree = 24;

// Coordinates of an element on the power basis 1, t, ..., t^{k-1}.
// Slots at index >= k are always zero, so equality and ordering are plain
// coordinate comparisons (ordering compares the highest coordinate first).
struct FqElem {
    std::array<uint32_t, kMaxExtensionDegree> c{};

    bool operator==(const FqElem&) const = default;
    std::strong_ordering operator<=>(const FqElem& o) const {
        for (int i = kMaxExtensionDegree - 1; i >= 0; --i)
            if (c[i] != o.c[i]) return c[i] <=> o.c[i];
        return std::strong_ordering::equal;
    }
};

struct FqElemHash {
    std::size_t operator()(const FqElem& a) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (uint32_t v : a.c) h = (h ^ v) * 1099511628211ull;
        return h;
    }
};

class FqField {
public:
    // F_{p^k} with the lexicographically least monic irreducible of degree k.
    static FqField make(uint64_t p, int k);

    // Explicit defining polynomial (monic, irreducible; verified).
    FqField(uint32_t p, FpPoly modulus);

    uint32_t characteristic() const { return p_; }
    int degree() const { return k_; }
    const FpPoly& modulus() const { return modulus_; }
    BigInt order() const;
    // q = p^k when it fits in 64 bits, otherwise 0.
    uint64_t order_u64() const;

    bool operator==(const FqField& o) const { return p_ == o.p_ && modulus_ == o.modulus_; }

    FqElem zero() const { return {}; }
    FqElem one() const { return from_int(1); }
    FqElem from_int(int64_t v) const;
    FqElem from_bigint(const BigInt& v) const;
    FqElem from_coords(const std::vector<uint32_t>& coords) const;
    FqElem gen() const;  // t

    bool is_zero(const FqElem& a) const { return a == FqElem{}; }
    bool in_prime_field(const FqElem& a) const;

    FqElem add(const FqElem& a, const FqElem& b) const;
    FqElem sub(const FqElem& a, const FqElem& b) const;
    FqElem neg(const FqElem& a) const;
    FqElem mul(const FqElem& a, const FqElem& b) const;
    FqElem mul_scalar(const FqElem& a, uint32_t s) const;
    FqElem sqr(const FqElem& a) const { return mul(a, a); }
    FqElem inv(const FqElem& a) const;
    FqElem div(const FqElem& a, const FqElem& b) const { return mul(a, inv(b)); }
    FqElem pow(const FqElem& a, const BigInt& e) const;
    FqElem pow(const FqElem& a, uint64_t e) const;
    FqElem frobenius(const FqElem& a) const { return pow(a, static_cast<uint64_t>(p_)); }

    // Bijection [0, q) <-> F_q using base-p digits of the coordinates.
    FqElem element_at(uint64_t index) const;
    uint64_t index_of(const FqElem& a) const;

    // Canonical text: "c" in F_p, otherwise a polynomial in t, highest power first.
    std::string format(const FqElem& a) const;

private:
    uint32_t p_;
    int k_;
    FpPoly modulus_;
};

}  // namespace cm
