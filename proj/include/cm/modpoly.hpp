#pragma once

// Classical modular polynomials and Hecke correspondences on j-values.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "cm/bivar.hpp"
#include "cm/fqpoly.hpp"
#include "cm/intpoly.hpp"

namespace cm {

// Levels accepted by modular_polynomial. The CLI applies its own, smaller bound.
inline constexpr int kMaxModularLevel = 19;
inline constexpr int kDefaultModularBound = 13;

// Coefficients c(-1), c(0), ..., c(n-2) of j(q) = 1/q + 744 + 196884 q + ...
std::vector<BigInt> j_coefficients(int n);

// Phi_l by exact integer q-series arithmetic. Memoized; consults the on-disk
// cache when one is configured.
const BivarIntPoly& modular_polynomial(int l);
BivarIntPoly compute_modular_polynomial(int l);

// Throws Format if poly is not symmetric, has the wrong bidegree, fails the
// Kronecker congruence mod l, or fails Phi(j(q), j(q^l)) = 0 modulo a large prime.
void validate_modular_polynomial(int l, const BivarIntPoly& poly);

// Cache text: "ell <l>" then "i j c" for i >= j, sorted by (i, j) descending.
std::string format_modular_polynomial(int l, const BivarIntPoly& poly);
BivarIntPoly parse_modular_polynomial(const std::string& text, int l);
void store_modular_polynomial(const std::filesystem::path& path, int l, const BivarIntPoly& poly);
// NotFound for a missing file, Format for a malformed or invalid one.
BivarIntPoly load_modular_polynomial(const std::filesystem::path& path, int l);

// Directory for cached Phi_l files ("phi_<l>.txt"); empty disables the cache.
// Initialized from the CM_MODPOLY_CACHE environment variable.
void set_modpoly_cache_dir(const std::filesystem::path& dir);
std::filesystem::path modpoly_cache_dir();

struct HeckeImage {
    std::vector<FqElem> roots;       // roots of Phi_l(j0, Y) in the field, with multiplicity, sorted
    std::map<int, int> outside;      // residue degree over the field -> number of roots, with multiplicity
    int total() const;               // always l + 1
};

// Roots of Phi_l(j0, Y). Unsupported when the characteristic equals l.
HeckeImage hecke_image(const FqElem& j0, int l, const FqField& F, Rng& rng);

// Cartesian product of the in-field images of the two coordinates.
std::vector<std::pair<FqElem, FqElem>> hecke_image_pairs(const std::pair<FqElem, FqElem>& x, int l,
                                                         const FqField& F, Rng& rng);

// Phi_l mod p (memoized).
const BivarFp& modular_polynomial_mod(int l, uint32_t p);

// Phi_l(j0, Y) as a polynomial in Y over F.
FqPoly modular_polynomial_at(const FqElem& j0, int l, const FqField& F);

}  // namespace cm
