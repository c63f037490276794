#pragma once

// Polynomials in two (dense) or three (sparse) variables over a prime field,
// with resultants by evaluation-interpolation and gcds by Brown's dense
// modular algorithm. Evaluation points are drawn from an extension F_{p^K}
// large enough to interpolate; results always have coefficients in F_p.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cm/fqpoly.hpp"

namespace cm {

// Dense polynomial in X, Y over F_p: rows()[i] is the coefficient of X^i as a
// polynomial in Y. Normalized: no trailing zero rows.
class BivarFp {
public:
    BivarFp() = default;
    explicit BivarFp(uint32_t p) : p_(p) {}
    BivarFp(uint32_t p, std::vector<FpPoly> rows);

    static BivarFp constant(uint32_t p, uint32_t c);
    static BivarFp x(uint32_t p);
    static BivarFp y(uint32_t p);
    // From "i j c" triples (c reduced mod p).
    static BivarFp from_terms(uint32_t p, const std::vector<std::array<int64_t, 3>>& terms);

    uint32_t characteristic() const { return p_; }
    const std::vector<FpPoly>& rows() const { return rows_; }
    uint32_t coeff(int i, int j) const;
    void set(int i, int j, uint32_t c);

    bool is_zero() const { return rows_.empty(); }
    bool is_constant() const { return rows_.size() <= 1 && (rows_.empty() || rows_[0].size() <= 1); }
    int deg_x() const { return static_cast<int>(rows_.size()) - 1; }
    int deg_y() const;
    bool involves_x() const { return rows_.size() > 1; }
    bool involves_y() const { return deg_y() > 0; }

    bool operator==(const BivarFp& o) const { return p_ == o.p_ && rows_ == o.rows_; }

    BivarFp operator+(const BivarFp& o) const;
    BivarFp operator-(const BivarFp& o) const;
    BivarFp operator*(const BivarFp& o) const;
    BivarFp scaled(uint32_t s) const;

    BivarFp swapped() const;  // P(Y, X)
    BivarFp derivative_x() const;
    BivarFp derivative_y() const;
    // P(X^{p^kx}, Y^{p^ky})
    BivarFp frobenius_twist(int kx, int ky) const;

    // Univariate restrictions at a point of an extension field.
    FqPoly eval_y(const FqElem& y, const FqField& F) const;  // polynomial in X
    FqPoly eval_x(const FqElem& x, const FqField& F) const;  // polynomial in Y
    FqElem eval(const FqElem& x, const FqElem& y, const FqField& F) const;

    // Scaled so the lexicographically leading term (highest X, then highest Y) has coefficient 1.
    BivarFp monic() const;

    // "i j c" lines, i descending then j descending.
    std::string to_terms_text() const;
    std::string to_string() const;

private:
    void trim();
    uint32_t p_ = 0;
    std::vector<FpPoly> rows_;
};

namespace bivar {

// Exact quotient a / b, or nullopt when b does not divide a.
std::optional<BivarFp> exact_div(const BivarFp& a, const BivarFp& b);
bool divides(const BivarFp& b, const BivarFp& a);

// Content with respect to X: gcd of the Y-polynomial coefficients (monic).
FpPoly content_x(const BivarFp& f);

// Squarefree part (product of distinct irreducible factors), monic.
BivarFp squarefree_part(const BivarFp& f);

// Least K with p^K >= n (within the supported extension range).
int extension_degree_for(uint32_t p, uint64_t n);

}  // namespace bivar

// gcd in F_p[X, Y], normalized with BivarFp::monic(). gcd(0, 0) is an error.
BivarFp gcd_bivar(const BivarFp& f, const BivarFp& g);

// Sparse polynomial over F_p in three variable slots 0, 1, 2.
class MPolyFp {
public:
    using Exponent = std::array<int, 3>;

    MPolyFp() = default;
    explicit MPolyFp(uint32_t p) : p_(p) {}
    // Embed a bivariate polynomial, X -> slot sx, Y -> slot sy.
    static MPolyFp from_bivar(const BivarFp& f, int sx, int sy);

    uint32_t characteristic() const { return p_; }
    const std::map<Exponent, uint32_t>& terms() const { return terms_; }
    void add_term(const Exponent& e, uint32_t c);
    int degree_in(int slot) const;
    bool is_zero() const { return terms_.empty(); }
    bool operator==(const MPolyFp&) const = default;

    // Requires the polynomial to involve at most the two given slots.
    BivarFp to_bivar(int sx, int sy) const;

private:
    uint32_t p_ = 0;
    std::map<Exponent, uint32_t> terms_;
};

// Res_{slot}(f, g): the resultant with respect to the given variable slot, as
// a polynomial in the remaining slots. Throws InvalidInput when both inputs
// are constant in that variable.
MPolyFp resultant_bivar(const MPolyFp& f, const MPolyFp& g, int eliminate);

}  // namespace cm
