#pragma once

// Hilbert class polynomials and their reductions modulo p.

#include <cstdint>
#include <vector>

#include "cm/fqpoly.hpp"
#include "cm/intpoly.hpp"
#include "cm/qforms.hpp"

namespace cm {

// H_D = prod over reduced forms (a, b, c) of (X - j((-b + sqrt D) / 2a)).
// Evaluated with MPFR, retrying at doubled precision when rounding is unsafe.
// Results are memoized per process.
IntPoly hilbert_class_polynomial(int64_t D);

// One attempt at a fixed number of decimal digits; throws ErrorKind::Precision
// when a coefficient is not within 0.01 of an integer.
IntPoly hilbert_class_polynomial_at(int64_t D, long digits);

// Working precision (decimal digits) used for the first attempt.
long hilbert_precision_digits(int64_t D);

// D' = d_K f'^2 with f' the prime-to-p part of the conductor.
OrderSpec prime_to_p_conductor(int64_t D, uint64_t p);

enum class ReductionKind { Ordinary, Supersingular };

struct ReducedJSet {
    int64_t D = 0;
    int64_t D_reduced = 0;  // D'
    uint32_t p = 0;
    ReductionKind kind = ReductionKind::Ordinary;
    // Ordinary: order of the class of a prime above p. Supersingular: degree
    // of the smallest field (1 or 2) holding every root.
    int residue_degree = 1;
    FqField field = FqField::make(2, 1);  // F_{p^e} (ordinary) or F_{p^2} (supersingular)
    std::vector<FqElem> roots;  // distinct, sorted
};

ReducedJSet reduced_j_set(int64_t D, uint64_t p, uint64_t seed = 0);

}  // namespace cm
