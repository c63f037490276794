#pragma once

// Prime-field scalars and dense polynomials over F_p.
//
// The prime is carried by value; all routines require 2 <= p < 2^28 so that
// products of two residues and short sums of them fit in 64 bits.

#include <cstdint>
#include <span>
#include <vector>

namespace cm {

inline constexpr uint32_t kMaxPrime = (1u << 28) - 1;

bool is_prime(uint64_t n);
// Least prime >= n.
uint64_t next_prime(uint64_t n);
// Distinct prime factors in increasing order.
std::vector<uint64_t> prime_factors(uint64_t n);

// Throws InvalidInput unless p is a prime below 2^28.
void check_field_prime(uint64_t p);

namespace fp {

inline uint32_t add(uint32_t a, uint32_t b, uint32_t p) {
    uint32_t s = a + b;
    return s >= p ? s - p : s;
}
inline uint32_t sub(uint32_t a, uint32_t b, uint32_t p) { return a >= b ? a - b : a + p - b; }
inline uint32_t neg(uint32_t a, uint32_t p) { return a == 0 ? 0 : p - a; }
inline uint32_t mul(uint32_t a, uint32_t b, uint32_t p) {
    return static_cast<uint32_t>(static_cast<uint64_t>(a) * b % p);
}
uint32_t pow(uint32_t a, uint64_t e, uint32_t p);
uint32_t inv(uint32_t a, uint32_t p);
uint32_t from_int(int64_t v, uint32_t p);
// Legendre symbol (a/p) for odd p; 0 when p | a.
int legendre(uint32_t a, uint32_t p);

}  // namespace fp

// Dense polynomial over F_p, coefficient i is the coefficient of x^i.
// Normalized: no trailing zeros; the zero polynomial is empty.
using FpPoly = std::vector<uint32_t>;

namespace fpoly {

void trim(FpPoly& f);
inline int degree(const FpPoly& f) { return static_cast<int>(f.size()) - 1; }
FpPoly from_ints(std::span<const int64_t> coeffs, uint32_t p);
FpPoly monomial(int deg, uint32_t c = 1);

FpPoly add(const FpPoly& a, const FpPoly& b, uint32_t p);
FpPoly sub(const FpPoly& a, const FpPoly& b, uint32_t p);
FpPoly scale(const FpPoly& a, uint32_t s, uint32_t p);
// dst += s * x^shift * src
void add_scaled(FpPoly& dst, const FpPoly& src, uint32_t s, int shift, uint32_t p);
FpPoly mul(const FpPoly& a, const FpPoly& b, uint32_t p);
// Quotient and remainder; b must be nonzero.
void divrem(const FpPoly& a, const FpPoly& b, FpPoly& q, FpPoly& r, uint32_t p);
FpPoly rem(const FpPoly& a, const FpPoly& b, uint32_t p);
// Monic gcd (zero if both are zero).
FpPoly gcd(const FpPoly& a, const FpPoly& b, uint32_t p);
FpPoly make_monic(const FpPoly& a, uint32_t p);
FpPoly derivative(const FpPoly& a, uint32_t p);
FpPoly mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, uint32_t p);
// a^e mod m.
FpPoly powmod(const FpPoly& a, uint64_t e, const FpPoly& m, uint32_t p);
uint32_t eval(const FpPoly& f, uint32_t x, uint32_t p);
// Rabin's irreducibility test.
bool is_irreducible(const FpPoly& f, uint32_t p);

}  // namespace fpoly

}  // namespace cm
