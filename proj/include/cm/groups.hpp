#pragma once

// Small finite groups by Cayley table: matrix groups over F_l, normal
// subgroups, Goursat data of subdirect products and automorphism searches.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cm {

// Sorted element indices.
using Subgroup = std::vector<int>;

class FiniteGroup {
public:
    // Validates closure, identity, inverses and associativity (all triples
    // up to 200 elements, a deterministic sample above).
    FiniteGroup(std::vector<int> table, std::vector<std::string> labels);

    int size() const { return n_; }
    int identity() const { return identity_; }
    int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
    int inv(int a) const { return inverse_[a]; }
    int conj(int g, int x) const { return mul(mul(g, x), inv(g)); }  // g x g^-1
    int element_order(int a) const;
    const std::string& label(int a) const { return labels_[a]; }
    int find(const std::string& label) const;  // -1 if absent

    Subgroup whole() const;
    Subgroup trivial() const { return {identity_}; }
    Subgroup generated(const std::vector<int>& gens) const;
    bool is_subgroup(const Subgroup& H) const;
    bool is_normal(const Subgroup& H) const;
    Subgroup normal_closure(const std::vector<int>& xs) const;
    std::vector<std::vector<int>> conjugacy_classes() const;
    Subgroup center() const;
    Subgroup centralizer_of(const Subgroup& H) const;
    // Greedy generating set starting from `first`.
    std::vector<int> generating_set(const std::vector<int>& first = {}) const;

    // H as a group in its own right; element i of the result is H[i].
    FiniteGroup restrict_to(const Subgroup& H) const;
    // G / N; element i of the result is the coset of cosets[i][0].
    FiniteGroup quotient(const Subgroup& N, std::vector<std::vector<int>>* cosets = nullptr) const;

private:
    int n_ = 0;
    int identity_ = 0;
    std::vector<int> table_;
    std::vector<int> inverse_;
    std::vector<std::string> labels_;
};

FiniteGroup cyclic_group(int n);
FiniteGroup dihedral_group(int n);  // order 2n
FiniteGroup quaternion_group();     // Q8
FiniteGroup direct_product(const FiniteGroup& A, const FiniteGroup& B);  // (a, b) -> a * |B| + b

// SL_2(F_l) and {g in GL_2(F_l) : det g in <q mod l>}, l in {3, 5, 7}.
FiniteGroup sl2(int l);
FiniteGroup gl2_det_subgroup(int l, int q);
// Index of the element [[a, b], [c, d]] in a matrix group built above, or -1.
int matrix_index(const FiniteGroup& G, int a, int b, int c, int d);

// Every normal subgroup, sorted by size then contents. Unsupported above 1000 elements.
std::vector<Subgroup> normal_subgroups(const FiniteGroup& G);

// Bijections phi with phi(xy) = phi(x) phi(y) and allowed(x, phi(x)) for all x,
// found by generator-image search (images filtered by order and class size).
// Generators are chosen starting from `first`. Stops after `limit` results.
std::vector<std::vector<int>> automorphisms(const FiniteGroup& G,
                                            const std::function<bool(int, int)>& allowed = nullptr,
                                            const std::vector<int>& first = {}, std::size_t limit = SIZE_MAX);
// Number of homomorphisms from A into the subgroup T of B.
std::size_t homomorphism_count(const FiniteGroup& A, const FiniteGroup& B, const Subgroup& T);

struct GoursatData {
    Subgroup N1, N2;               // kernels: {a : (a, 1) in H}, {b : (1, b) in H}
    std::vector<int> iso;          // coset index of N1 -> coset index of N2
    std::vector<std::vector<int>> cosets1, cosets2;
    bool well_defined = false;     // each coset of N1 pairs with exactly one coset of N2
    bool is_isomorphism = false;   // the induced map G1/N1 -> G2/N2 is a group isomorphism
    bool reconstructs = false;     // {(a, b) : iso(a N1) = b N2} == H
    bool index_formula = false;    // |H| = |G1| |N2|
};

// H <= G1 x G2 given by generator pairs; Precondition error unless H is subdirect.
GoursatData goursat_invariants(const FiniteGroup& G1, const FiniteGroup& G2,
                               const std::vector<std::pair<int, int>>& generators,
                               std::vector<std::pair<int, int>>* elements = nullptr);

struct AutomLemmaReport {
    bool trivial_action_on_center = false;  // G acts trivially on Z(N)
    bool hom_trivial = false;               // Hom(G/N, Z(N)) = 1
    bool hypotheses_hold = false;
    std::size_t nonidentity = 0;            // automorphisms inducing 1 on N and G/N, other than 1
    bool consistent = false;                // !hypotheses_hold || nonidentity == 0
};

// Unsupported above 500 elements.
AutomLemmaReport verify_autom_extension_lemma(const FiniteGroup& G, const Subgroup& N);

struct Psl2AutReport {
    std::size_t automorphisms = 0;  // |Aut(PSL_2(F_l))|
    std::size_t induced = 0;        // distinct automorphisms from conjugation by GL_2(F_l)
    std::size_t inner = 0;
    bool all_induced = false;
    bool outer_found = false;       // conjugation by a non-square-determinant matrix is not inner
};

// l = 5 only.
Psl2AutReport psl2_automorphisms(int l);
bool psl2_automorphisms_induced(int l);

}  // namespace cm
