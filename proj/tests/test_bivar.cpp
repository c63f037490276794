#include "doctest.h"

#include "cm/bivar.hpp"
#include "cm/error.hpp"

using namespace cm;

namespace {

BivarFp poly(uint32_t p, std::vector<std::array<int64_t, 3>> terms) { return BivarFp::from_terms(p, terms); }

// Resultant oracle: Sylvester determinant by Gaussian elimination over F_p.
uint32_t det_mod(std::vector<std::vector<uint32_t>> m, uint32_t p) {
    const std::size_t n = m.size();
    uint32_t det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = fp::neg(det, p);
        }
        det = fp::mul(det, m[c][c], p);
        const uint32_t inv = fp::inv(m[c][c], p);
        for (std::size_t r = c + 1; r < n; ++r) {
            const uint32_t f = fp::mul(m[r][c], inv, p);
            for (std::size_t k = c; k < n; ++k) m[r][k] = fp::sub(m[r][k], fp::mul(f, m[c][k], p), p);
        }
    }
    return det;
}

uint32_t sylvester(const FpPoly& a, int m, const FpPoly& b, int n, uint32_t p) {
    const int N = m + n;
    std::vector<std::vector<uint32_t>> s(N, std::vector<uint32_t>(N, 0));
    auto co = [](const FpPoly& f, int i) { return i >= 0 && i < static_cast<int>(f.size()) ? f[i] : 0u; };
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i) s[r][r + i] = co(a, m - i);
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i) s[n + r][r + i] = co(b, n - i);
    return det_mod(s, p);
}

}  // namespace

TEST_CASE("bivariate arithmetic and exact division") {
    const uint32_t p = 11;
    const BivarFp f = poly(p, {{2, 1, 1}, {0, 3, 5}, {1, 0, -2}});
    const BivarFp g = poly(p, {{1, 1, 3}, {0, 0, 1}});
    const BivarFp fg = f * g;
    CHECK(*bivar::exact_div(fg, g) == f);
    CHECK_FALSE(bivar::exact_div(fg + BivarFp::constant(p, 1), g).has_value());
    CHECK(f.swapped().swapped() == f);
    CHECK(f.to_terms_text() == "2 1 1\n1 0 9\n0 3 5\n");
    CHECK(fg.deg_x() == 3);
    CHECK(fg.deg_y() == 4);
}

TEST_CASE("bivariate gcd recovers a planted common factor") {
    for (uint32_t p : {2u, 5u, 101u}) {
        const BivarFp h = poly(p, {{2, 0, 1}, {1, 2, 1}, {0, 1, 1}, {0, 0, 1}});
        const BivarFp a = poly(p, {{1, 1, 1}, {0, 0, 1}, {3, 0, 1}});
        const BivarFp b = poly(p, {{0, 2, 1}, {1, 0, 1}, {0, 0, 1}});
        const BivarFp g = gcd_bivar(h * a, h * b * BivarFp::y(p));
        CHECK(bivar::divides(h, g));
        CHECK(bivar::divides(g, h * a));
        CHECK(g == h.monic());
    }
}

TEST_CASE("gcd with Y-content") {
    const uint32_t p = 7;
    const BivarFp c = poly(p, {{0, 1, 1}, {0, 0, 3}});  // Y + 3
    const BivarFp a = poly(p, {{1, 0, 1}, {0, 1, 1}});
    const BivarFp b = poly(p, {{1, 0, 1}, {0, 0, 2}});
    CHECK(gcd_bivar(c * a, c * b) == c);
    CHECK(gcd_bivar(a, b) == BivarFp::constant(p, 1));
}

TEST_CASE("bivariate squarefree part") {
    const uint32_t p = 3;
    const BivarFp a = poly(p, {{1, 0, 1}, {0, 1, 1}, {0, 0, 1}});
    const BivarFp b = poly(p, {{2, 0, 1}, {0, 1, 2}});
    // a^3 is a p-th power: all derivatives vanish.
    const BivarFp f = a * a * a * b * b;
    CHECK(bivar::squarefree_part(f) == (a * b).monic());
    CHECK(bivar::squarefree_part(a * a * a) == a.monic());
}

TEST_CASE("trivariate resultant agrees with Sylvester determinant") {
    const uint32_t p = 13;
    // f(x, y) and g(y, z): eliminate y (slot 1), result in slots 0 and 2.
    const BivarFp f = poly(p, {{2, 1, 1}, {0, 2, 3}, {1, 0, 1}, {0, 0, 2}});
    const BivarFp g = poly(p, {{1, 1, 1}, {0, 2, 1}, {2, 0, 5}});  // X -> y, Y -> z
    const MPolyFp F = MPolyFp::from_bivar(f, 0, 1);
    const MPolyFp G = MPolyFp::from_bivar(g, 1, 2);
    const BivarFp r = resultant_bivar(F, G, 1).to_bivar(0, 2);
    const int m = F.degree_in(1), n = G.degree_in(1);
    for (uint32_t x = 0; x < p; ++x)
        for (uint32_t z = 0; z < p; ++z) {
            FpPoly fy, gy;
            for (int j = 0; j <= m; ++j) {
                uint32_t v = 0, xp = 1;
                for (int i = 0; i <= f.deg_x(); ++i, xp = fp::mul(xp, x, p)) v = fp::add(v, fp::mul(f.coeff(i, j), xp, p), p);
                fy.push_back(v);
            }
            for (int j = 0; j <= n; ++j) {
                uint32_t v = 0, zp = 1;
                for (int i = 0; i <= g.deg_y(); ++i, zp = fp::mul(zp, z, p)) v = fp::add(v, fp::mul(g.coeff(j, i), zp, p), p);
                gy.push_back(v);
            }
            const uint32_t expect = sylvester(fy, m, gy, n, p);
            const FqField F1 = FqField::make(p, 1);
            CHECK(r.eval(F1.from_int(x), F1.from_int(z), F1).c[0] == expect);
        }
    const MPolyFp X0 = MPolyFp::from_bivar(BivarFp::x(p), 0, 2);
    CHECK_THROWS_AS(resultant_bivar(X0, X0, 1), Error);
}
