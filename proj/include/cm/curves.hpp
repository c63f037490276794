#pragma once

// Elliptic curves y^2 = x^3 + a4 x + a6 over F_{p^k}, p >= 5: point counting,
// supersingularity and endomorphism rings of ordinary curves via volcanoes.

#include <cstdint>
#include <vector>

#include "cm/fqpoly.hpp"
#include "cm/modpoly.hpp"

namespace cm {

inline constexpr uint64_t kDefaultCountBound = 1000000;

struct EllipticCurve {
    FqField field;
    FqElem a4, a6;

    FqElem discriminant() const;  // -16 (4 a4^3 + 27 a6^2)
    FqElem j_invariant() const;
};

// j = 0: (0, 1); j = 1728: (1, 0); otherwise a4 = 3k, a6 = 2k, k = j / (1728 - j).
EllipticCurve curve_from_j(const FqElem& j, const FqField& F);

struct PointCount {
    uint64_t count = 0;  // #E(F_q), including the point at infinity
    int64_t trace = 0;   // q + 1 - count
};

// Character-sum count; the prime-field case runs on the SIMD kernel.
// Unsupported when q exceeds bound.
PointCount point_count(const EllipticCurve& E, uint64_t bound = kDefaultCountBound);

// Decided over the smallest field F_{p^m} holding j: false if m > 2, otherwise
// p | t for the trace t over F_{p^m}.
bool is_supersingular(const FqElem& j, const FqField& F, uint64_t bound = kDefaultCountBound);

struct FrobeniusData {
    uint64_t q = 0;
    int64_t trace = 0;
    int64_t disc = 0;  // t^2 - 4q = v^2 d_K
    int64_t v = 0;
    int64_t dK = 0;
};

FrobeniusData frobenius_data(const EllipticCurve& E, uint64_t bound = kDefaultCountBound);

// Level of j below the surface of its r-volcano (0 = surface) over the field
// of E, given the volcano height h = v_r(v).
int volcano_depth(const FqElem& j, const FqField& F, int r, int h);

// D = d_K f'^2 for ordinary j. Precondition error for supersingular j;
// Unsupported when a prime r | v exceeds modpoly_bound or q exceeds the count bound.
int64_t endomorphism_discriminant(const FqElem& j, const FqField& F, int modpoly_bound = kDefaultModularBound,
                                  uint64_t count_bound = kDefaultCountBound);

// Horizontal l-neighbours of a root j of H_D mod p (ordinary reduction):
// the roots of gcd(Phi_l(j, Y), H_D(Y)) in F, sorted.
std::vector<FqElem> horizontal_isogeny_step(const FqElem& j, int64_t D, int l, const FqField& F, Rng& rng);

// Closure of {j} under horizontal steps for the given primes, sorted.
std::vector<FqElem> horizontal_orbit(const FqElem& j, int64_t D, const std::vector<int>& primes, const FqField& F,
                                     Rng& rng);

}  // namespace cm
