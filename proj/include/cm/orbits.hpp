#pragma once

// Reduced CM pairs: the image of Galois in Pic(D1) x Pic(D2), orbit models of
// reduced pairs, and the split-prime harness for the counting argument.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cm/fq.hpp"
#include "cm/modpoly.hpp"
#include "cm/qforms.hpp"

namespace cm {

// Class of the prime above l compatible across all orders of one field:
// (l, f b0, .) with b0 from prime_class(l, d_K).
QuadForm field_prime_class(uint64_t l, int64_t D);

struct GaloisImage {
    int64_t D1 = 0, D2 = 0;
    std::shared_ptr<const ClassGroup> G1, G2;
    bool same_field = false;
    uint64_t bound = 0;
    std::vector<uint64_t> primes;                 // generating primes used
    std::vector<std::pair<int, int>> generators;  // class indices
    std::vector<std::pair<int, int>> elements;    // sorted

    std::size_t size() const { return elements.size(); }
    bool contains(int a, int b) const;
    bool surjective() const;
    // Each projection has the index predicted by projection_index.
    bool complete() const;
};

// Index in Pic(D) of the Frobenius classes of primes of K K', K' = Q(sqrt d_other):
// 2 when K' lies in the ring class field of D (genus theory: d_other | D and
// D / d_other is a discriminant, K' != K), else 1.
int projection_index(int64_t D, int64_t d_other);

// Subgroup generated by the Frobenius pairs of the degree-1 primes of K1 K2
// above each split l <= B with l not dividing f1 f2: ([l], [l]) and
// ([l], [l]^-1) for different fields, ([l], [l]) when d_K1 = d_K2.
// InsufficientBound when a projection is smaller than projection_index allows.
GaloisImage galois_image(int64_t D1, int64_t D2, uint64_t B);

// Raises the bound from `start` until both projections are complete and the
// size has not changed over `window` further generating primes.
GaloisImage galois_image_auto(int64_t D1, int64_t D2, uint64_t start = 2, int window = 50);

struct CMPairSpec {
    int64_t D1 = 0, D2 = 0;
    uint32_t p = 0;
    int64_t D1r = 0, D2r = 0;  // prime-to-p conductor reductions
    FqField field1 = FqField::make(2, 1), field2 = FqField::make(2, 1);
    std::vector<FqElem> roots1, roots2;  // all roots of H_{Di'} mod p, sorted
    FqElem x1, x2;                       // base point
};

// Requires both reductions ordinary; the base point is (roots1[i1], roots2[i2]).
CMPairSpec make_cm_pair(int64_t D1, int64_t D2, uint64_t p, std::size_t i1 = 0, std::size_t i2 = 0);

// label[c] = [c] * x for every class index c of Pic(D), found as a labeling
// consistent with the horizontal l-neighbours for split l <= modpoly_bound.
// The direction of each l-edge is not observable, so the labeling is one of
// possibly several consistent with the graph (always including its inverse).
// Unsupported when those primes do not generate Pic(D).
std::vector<FqElem> torsor_labeling(const FqElem& x, const ClassGroup& G, const FqField& F, Rng& rng,
                                    int modpoly_bound = kDefaultModularBound);

struct OrbitModel {
    CMPairSpec spec;
    GaloisImage gamma;
    std::vector<FqElem> label1, label2;  // torsor labelings based at x1, x2
    // Each suborbit is a list of (class index 1, class index 2).
    std::vector<std::vector<std::pair<int, int>>> suborbits;

    std::size_t size() const;  // #s(F_p-bar)
    std::vector<std::pair<FqElem, FqElem>> points() const;
};

OrbitModel orbit_model(const CMPairSpec& spec, const GaloisImage& gamma, int modpoly_bound = kDefaultModularBound);

struct Thm2Report {
    uint64_t N = 0;
    int64_t d1 = 1, d2 = 1;
    std::optional<uint64_t> ell;
    double margin_count = 0;  // N - 2 d1 d2 (l + 1)^2
    double margin_log = 0;    // l - ln N
    bool admissible = false;
};

// Least prime l != p, split in both discriminants and prime to both conductors,
// with l > ln N and N > 2 d1 d2 (l + 1)^2.
Thm2Report thm2_search(uint64_t N, int64_t D1, int64_t D2, uint64_t p, int64_t d1, int64_t d2);
Thm2Report thm2_search(const OrbitModel& model, int64_t d1, int64_t d2);

// Every pair of the orbit is in (T_l x T_l) of some pair of the orbit.
bool verify_frobenius_lifting(const OrbitModel& model, int l);

}  // namespace cm
