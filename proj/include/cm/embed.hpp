#pragma once

// Embeddings between the standard models of F_{p^m} and F_{p^k}, m | k.

#include <optional>

#include "cm/fq.hpp"

namespace cm {

class SubfieldEmbedding {
public:
    // Sends the generator of small to the least root (canonical order) of its
    // defining polynomial in big.
    SubfieldEmbedding(const FqField& small, const FqField& big);

    const FqField& small() const { return small_; }
    const FqField& big() const { return big_; }
    FqElem lift(const FqElem& a) const;
    // Preimage of b, or nullopt when b is not in the image.
    std::optional<FqElem> descend(const FqElem& b) const;

private:
    FqField small_, big_;
    std::vector<FqElem> powers_;  // images of t^i, i < deg small
};

// Least m dividing deg F with a in F_{p^m}.
int minimal_subfield_degree(const FqElem& a, const FqField& F);

}  // namespace cm
