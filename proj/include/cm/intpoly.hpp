#pragma once

// Polynomials with arbitrary-precision integer coefficients.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cm/fq.hpp"

namespace cm {

class BivarFp;

// Univariate polynomial over Z; coefficient i multiplies X^i.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<BigInt> coeffs);

    const std::vector<BigInt>& coeffs() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const BigInt& coeff(int i) const;

    bool operator==(const IntPoly&) const = default;

    IntPoly operator*(const IntPoly& o) const;
    IntPoly derivative() const;
    BigInt eval(const BigInt& x) const;
    FpPoly reduce(uint32_t p) const;

    // "X^2 + 191025*X - 121287375"
    std::string to_string(const std::string& var = "X") const;

private:
    void trim();
    std::vector<BigInt> coeffs_;
};

// Sparse bivariate polynomial over Z in X, Y; no zero coefficients stored.
class BivarIntPoly {
public:
    using Monomial = std::pair<int, int>;  // (deg X, deg Y)

    const std::map<Monomial, BigInt>& terms() const { return terms_; }
    BigInt coeff(int i, int j) const;
    void set(int i, int j, const BigInt& c);
    void add_to(int i, int j, const BigInt& c);

    int deg_x() const;
    int deg_y() const;
    bool is_zero() const { return terms_.empty(); }
    bool operator==(const BivarIntPoly&) const = default;

    BivarIntPoly swapped() const;
    bool is_symmetric() const { return *this == swapped(); }
    BivarFp reduce(uint32_t p) const;

private:
    std::map<Monomial, BigInt> terms_;
};

}  // namespace cm
