#pragma once

// Univariate polynomials over F_q: arithmetic, gcd, resultants, interpolation
// and root finding (Cantor-Zassenhaus equal-degree splitting).

#include <random>
#include <span>
#include <vector>

#include "cm/fq.hpp"

namespace cm {

using Rng = std::mt19937_64;

// Coefficient i multiplies X^i; no trailing zeros; zero polynomial is empty.
using FqPoly = std::vector<FqElem>;

struct RootMultiplicity {
    FqElem root;
    int multiplicity;
};

namespace fqpoly {

void trim(FqPoly& f);
inline int degree(const FqPoly& f) { return static_cast<int>(f.size()) - 1; }
FqPoly from_fp(const FpPoly& f, const FqField& F);
// X - r
FqPoly linear(const FqElem& r, const FqField& F);

FqPoly add(const FqPoly& a, const FqPoly& b, const FqField& F);
FqPoly sub(const FqPoly& a, const FqPoly& b, const FqField& F);
FqPoly scale(const FqPoly& a, const FqElem& s, const FqField& F);
FqPoly mul(const FqPoly& a, const FqPoly& b, const FqField& F);
void divrem(const FqPoly& a, const FqPoly& b, FqPoly& q, FqPoly& r, const FqField& F);
FqPoly rem(const FqPoly& a, const FqPoly& b, const FqField& F);
FqPoly quo(const FqPoly& a, const FqPoly& b, const FqField& F);
FqPoly make_monic(const FqPoly& a, const FqField& F);
FqPoly gcd(const FqPoly& a, const FqPoly& b, const FqField& F);
FqPoly derivative(const FqPoly& a, const FqField& F);
FqElem eval(const FqPoly& f, const FqElem& x, const FqField& F);
FqPoly mulmod(const FqPoly& a, const FqPoly& b, const FqPoly& m, const FqField& F);
FqPoly powmod(const FqPoly& a, const BigInt& e, const FqPoly& m, const FqField& F);
// X^q mod m with q = #F.
FqPoly frobenius_x(const FqPoly& m, const FqField& F);

// Resultant of a and b regarded as polynomials of formal degrees m >= deg a
// and n >= deg b (Sylvester determinant convention).
FqElem resultant(const FqPoly& a, int m, const FqPoly& b, int n, const FqField& F);
FqElem resultant(const FqPoly& a, const FqPoly& b, const FqField& F);

// Unique polynomial of degree < xs.size() through (xs[i], ys[i]); xs distinct.
FqPoly interpolate(std::span<const FqElem> xs, std::span<const FqElem> ys, const FqField& F);

// Product of the distinct monic irreducible factors of f (f nonzero).
FqPoly squarefree_part(const FqPoly& f, const FqField& F);

// Roots of f in F with multiplicity, sorted by canonical element order.
// Throws InvalidInput for the zero polynomial.
std::vector<RootMultiplicity> roots_with_multiplicity(const FqPoly& f, const FqField& F, Rng& rng);
// Distinct roots of f in F, sorted.
std::vector<FqElem> distinct_roots(const FqPoly& f, const FqField& F, Rng& rng);

// Distinct-degree factorization of a squarefree monic f: entry d holds the
// product of the irreducible factors of degree d (entry 0 unused).
std::vector<FqPoly> distinct_degree_factorization(const FqPoly& f, const FqField& F);

}  // namespace fqpoly

// Multiset of roots of f in the field, each repeated by its multiplicity.
std::vector<FqElem> poly_roots(const FqPoly& f, const FqField& F, Rng& rng);

}  // namespace cm
