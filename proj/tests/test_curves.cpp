#include <algorithm>

#include "doctest.h"

#include "cm/classpoly.hpp"
#include "cm/curves.hpp"
#include "cm/embed.hpp"
#include "cm/error.hpp"
#include "cm/qforms.hpp"

using namespace cm;

namespace {

// Affine solutions of y^2 = x^3 + a4 x + a6 by enumerating both coordinates, plus infinity.
uint64_t brute_count(const EllipticCurve& E) {
    const FqField& F = E.field;
    const uint64_t q = F.order_u64();
    std::vector<uint32_t> squares(q, 0);
    for (uint64_t i = 0; i < q; ++i) squares[F.index_of(F.sqr(F.element_at(i)))]++;
    uint64_t n = 1;
    for (uint64_t i = 0; i < q; ++i) {
        const FqElem x = F.element_at(i);
        n += squares[F.index_of(F.add(F.add(F.mul(F.sqr(x), x), F.mul(E.a4, x)), E.a6))];
    }
    return n;
}

// Hasse invariant: coefficient of x^{p-1} in (x^3 + a4 x + a6)^{(p-1)/2}.
FqElem hasse_invariant(const EllipticCurve& E) {
    const FqField& F = E.field;
    const uint32_t p = F.characteristic();
    FqPoly f = {E.a6, E.a4, F.zero(), F.one()};
    FqPoly acc = {F.one()};
    for (uint32_t i = 0; i < (p - 1) / 2; ++i) acc = fqpoly::mul(acc, f, F);
    return acc.size() > p - 1 ? acc[p - 1] : F.zero();
}

int supersingular_mass(uint32_t p) {
    const int base = static_cast<int>(p / 12);
    switch (p % 12) {
        case 1: return base;
        case 5:
        case 7: return base + 1;
        default: return base + 2;
    }
}

}  // namespace

TEST_CASE("curve from j") {
    const FqField F = FqField::make(7, 1);
    const EllipticCurve e0 = curve_from_j(F.zero(), F);
    CHECK(e0.a4 == F.zero());
    CHECK(e0.a6 == F.one());
    const EllipticCurve e1 = curve_from_j(F.from_int(1728), F);
    CHECK(e1.a4 == F.one());
    CHECK(e1.a6 == F.zero());
    for (uint32_t p : {5u, 7u, 101u}) {
        for (int k : {1, 2}) {
            const FqField G = FqField::make(p, k);
            for (uint64_t i = 0; i < std::min<uint64_t>(G.order_u64(), 60); ++i) {
                const FqElem j = G.element_at(i * 7 % G.order_u64());
                CHECK(curve_from_j(j, G).j_invariant() == j);
            }
        }
    }
    CHECK_THROWS_AS(curve_from_j(FqField::make(3, 1).one(), FqField::make(3, 1)), Error);
}

TEST_CASE("point counts") {
    const FqField F = FqField::make(7, 1);
    const PointCount a = point_count({F, F.zero(), F.one()});
    CHECK(a.count == 12);
    CHECK(a.trace == -4);
    const PointCount b = point_count({F, F.one(), F.zero()});
    CHECK(b.count == 8);
    CHECK(b.trace == 0);
    for (uint32_t p : {5u, 7u, 11u, 13u, 101u, 1009u}) {
        const FqField G = FqField::make(p, 1);
        for (uint32_t a4 = 0; a4 < 5; ++a4)
            for (uint32_t a6 = 1; a6 < 4; ++a6) {
                const EllipticCurve E{G, G.from_int(a4), G.from_int(a6)};
                if (G.is_zero(E.discriminant())) continue;
                const PointCount pc = point_count(E);
                CHECK(pc.count == brute_count(E));
                CHECK(pc.trace * pc.trace <= 4 * static_cast<int64_t>(p));
            }
    }
    const FqField G = FqField::make(7, 2);
    for (uint64_t i = 1; i < 49; i += 5) {
        const EllipticCurve E = curve_from_j(G.element_at(i), G);
        CHECK(point_count(E).count == brute_count(E));
    }
    CHECK_THROWS_AS(point_count(curve_from_j(FqField::make(1000003, 1).one(), FqField::make(1000003, 1))), Error);
}

TEST_CASE("supersingularity") {
    const FqField F = FqField::make(7, 1);
    CHECK(is_supersingular(F.from_int(6), F));
    CHECK_FALSE(is_supersingular(F.zero(), F));
    for (uint32_t p : {7u, 11u, 13u, 17u, 19u, 23u, 37u, 61u}) {
        const FqField G = FqField::make(p, 2);
        int n = 0;
        for (uint64_t i = 0; i < G.order_u64(); ++i) {
            const FqElem j = G.element_at(i);
            const bool ss = is_supersingular(j, G);
            n += ss;
            CHECK(ss == G.is_zero(hasse_invariant(curve_from_j(j, G))));
        }
        CHECK(n == supersingular_mass(p));
    }
    // j outside F_{p^2} is ordinary
    const FqField G3 = FqField::make(7, 3);
    CHECK_FALSE(is_supersingular(G3.gen(), G3));
}

TEST_CASE("Hecke images preserve supersingularity") {
    Rng rng(1);
    const FqField F = FqField::make(7, 2);
    const FqElem j = F.from_int(6);
    const HeckeImage img = hecke_image(j, 2, F, rng);
    CHECK(img.total() == 3);
    CHECK(img.outside.empty());
    for (const auto& y : img.roots) CHECK(is_supersingular(y, F));
}

TEST_CASE("endomorphism discriminants") {
    const FqField F7 = FqField::make(7, 1);
    CHECK(endomorphism_discriminant(F7.zero(), F7) == -3);
    CHECK_THROWS_AS(endomorphism_discriminant(F7.from_int(6), F7), Error);

    Rng rng(0);
    const ReducedJSet s15 = reduced_j_set(-15, 17);
    REQUIRE(s15.roots.size() == 2);
    for (const auto& j : s15.roots) CHECK(endomorphism_discriminant(j, s15.field) == -15);

    for (uint32_t p : {13u, 17u, 29u, 37u, 41u}) {
        const FqField F = FqField::make(p, 1);
        CHECK(endomorphism_discriminant(F.from_int(287496), F) == -16);
        CHECK(endomorphism_discriminant(F.from_int(1728), F) == -4);
    }
}

TEST_CASE("every root of H_D mod p has discriminant D") {
    int checked = 0;
    for (int64_t D : {-7, -11, -15, -20, -23, -28, -31, -35, -36, -39, -44, -48, -63, -64, -72, -75}) {
        const OrderSpec o = OrderSpec::from_discriminant(D);
        for (uint32_t p = 5; p < 120; ++p) {
            if (!is_prime(p) || kronecker(o.dK, p) != 1 || o.f % p == 0) continue;
            const ReducedJSet s = reduced_j_set(D, p);
            if (s.field.order_u64() > 200000) continue;
            for (const auto& j : s.roots) {
                int64_t got = 0;
                try {
                    got = endomorphism_discriminant(j, s.field);
                } catch (const Error& e) {
                    CHECK(e.kind() == ErrorKind::Unsupported);
                    continue;
                }
                CHECK(got == D);
                ++checked;
            }
        }
    }
    CHECK(checked > 200);
}

TEST_CASE("horizontal isogeny steps") {
    Rng rng(0);
    const FqField F13 = FqField::make(13, 1);
    const FqElem j1728 = F13.from_int(1728);
    const auto n = horizontal_isogeny_step(j1728, -4, 5, F13, rng);
    CHECK(n == std::vector<FqElem>{j1728});

    const ReducedJSet s = reduced_j_set(-23, 2);
    for (const auto& j : s.roots)
        for (const auto& y : horizontal_isogeny_step(j, -23, 3, s.field, rng))
            CHECK(std::binary_search(s.roots.begin(), s.roots.end(), y));

    // A prime with principal class fixes j.
    const ClassGroup G(-23);
    for (uint64_t l = 2; l <= 97; ++l) {
        if (!is_prime(l) || kronecker(-23, l) != 1) continue;
        if (G.index_of(prime_class(l, -23)) != 0) continue;
        if (l > kMaxModularLevel) break;
        const ReducedJSet t = reduced_j_set(-23, 101);
        const auto nb = horizontal_isogeny_step(t.roots[0], -23, static_cast<int>(l), t.field, rng);
        CHECK(std::find(nb.begin(), nb.end(), t.roots[0]) != nb.end());
    }
    CHECK_THROWS_AS(horizontal_isogeny_step(j1728, -4, 3, F13, rng), Error);
}

TEST_CASE("horizontal orbits are the full fibre") {
    Rng rng(0);
    for (int64_t D : {-23, -47, -71, -84, -87}) {
        for (uint32_t p : {53u, 59u, 73u, 101u, 103u, 167u}) {
            const OrderSpec o = OrderSpec::from_discriminant(D);
            if (kronecker(o.dK, p) != 1) continue;
            const ReducedJSet s = reduced_j_set(D, p);
            std::vector<int> ls;
            for (int l = 2; l <= 13; ++l)
                if (is_prime(l) && static_cast<uint32_t>(l) != p && kronecker(D, l) == 1 && o.f % l != 0) ls.push_back(l);
            CHECK(horizontal_orbit(s.roots[0], D, ls, s.field, rng) == s.roots);
        }
    }
}
