#include <algorithm>
#include <set>

#include "doctest.h"

#include "cm/error.hpp"
#include "cm/fqpoly.hpp"

using namespace cm;

TEST_CASE("primality") {
    CHECK(is_prime(2));
    CHECK(is_prime(268435399));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(3215031751ull));  // strong pseudoprime to bases 2, 3, 5, 7
    CHECK(next_prime(90) == 97);
    CHECK(prime_factors(360) == std::vector<uint64_t>{2, 3, 5});
    CHECK_THROWS_AS(check_field_prime(1u << 28), Error);
    CHECK_THROWS_AS(check_field_prime(15), Error);
}

TEST_CASE("prime field basics") {
    const uint32_t p = 1000003;
    for (uint32_t a : {1u, 2u, 12345u, p - 1})
        CHECK(fp::mul(a, fp::inv(a, p), p) == 1);
    CHECK(fp::from_int(-1, p) == p - 1);
    CHECK(fp::legendre(4, 7) == 1);
    CHECK(fp::legendre(3, 7) == -1);
    CHECK(fp::legendre(0, 7) == 0);
}

TEST_CASE("polynomial division and gcd over F_p") {
    const uint32_t p = 101;
    const FpPoly a = fpoly::from_ints(std::vector<int64_t>{1, 2, 3, 4, 5}, p);
    const FpPoly b = fpoly::from_ints(std::vector<int64_t>{7, 0, 1}, p);
    FpPoly q, r;
    fpoly::divrem(a, b, q, r, p);
    CHECK(fpoly::add(fpoly::mul(q, b, p), r, p) == a);
    CHECK(fpoly::degree(r) < 2);
    const FpPoly g = fpoly::from_ints(std::vector<int64_t>{3, 1}, p);
    CHECK(fpoly::gcd(fpoly::mul(a, g, p), fpoly::mul(b, g, p), p) == g);
    CHECK(fpoly::is_irreducible(fpoly::from_ints(std::vector<int64_t>{1, 1, 1}, 2), 2));
    CHECK_FALSE(fpoly::is_irreducible(fpoly::from_ints(std::vector<int64_t>{1, 0, 1}, 2), 2));
}

TEST_CASE("extension field structure") {
    // F_4 = F_2[t]/(t^2+t+1), the only irreducible quadratic.
    const FqField F4 = FqField::make(2, 2);
    CHECK(F4.modulus() == FpPoly{1, 1, 1});
    // Lex-least irreducible quadratic over F_7 enumerated by c0 + 7 c1: t^2 + 1.
    CHECK(FqField::make(7, 2).modulus() == FpPoly{1, 0, 1});

    const FqField F = FqField::make(5, 3);
    CHECK(F.order_u64() == 125);
    std::set<uint64_t> seen;
    for (uint64_t i = 0; i < 125; ++i) {
        const FqElem a = F.element_at(i);
        CHECK(F.index_of(a) == i);
        seen.insert(i);
        if (!F.is_zero(a)) {
            CHECK(F.mul(a, F.inv(a)) == F.one());
            CHECK(F.pow(a, uint64_t{124}) == F.one());
        }
        CHECK(F.pow(a, uint64_t{125}) == a);
        CHECK(F.in_prime_field(a) == (F.frobenius(a) == a));
    }
    CHECK(F.format(F.from_int(3)) == "3");
    CHECK(F.format(F.add(F.mul(F.gen(), F.gen()), F.from_int(4))) == "t^2+4");
}

TEST_CASE("resultant matches product over roots") {
    const FqField F = FqField::make(13, 2);
    Rng rng(3);
    std::vector<FqElem> ra, rb;
    for (int i = 0; i < 3; ++i) ra.push_back(F.element_at(rng() % 169));
    for (int i = 0; i < 4; ++i) rb.push_back(F.element_at(rng() % 169));
    FqPoly a{F.one()}, b{F.one()};
    for (auto& r : ra) a = fqpoly::mul(a, fqpoly::linear(r, F), F);
    for (auto& r : rb) b = fqpoly::mul(b, fqpoly::linear(r, F), F);
    FqElem expect = F.one();
    for (auto& x : ra)
        for (auto& y : rb) expect = F.mul(expect, F.sub(x, y));
    CHECK(fqpoly::resultant(a, b, F) == expect);
    // Formal degrees above the actual ones pick up powers of the leading coefficients.
    const FqElem r2 = fqpoly::resultant(a, 3, b, 5, F);
    CHECK(r2 == expect);  // a is monic
    const FqPoly a2 = fqpoly::scale(a, F.from_int(2), F);
    CHECK(fqpoly::resultant(a2, 3, b, 5, F) == F.mul(F.pow(F.from_int(2), uint64_t{5}), expect));
}

TEST_CASE("interpolation round trip") {
    const FqField F = FqField::make(3, 4);
    FqPoly f;
    for (int i = 0; i < 10; ++i) f.push_back(F.element_at(7 * i + 1));
    std::vector<FqElem> xs, ys;
    for (int i = 0; i < 10; ++i) {
        xs.push_back(F.element_at(i));
        ys.push_back(fqpoly::eval(f, xs.back(), F));
    }
    CHECK(fqpoly::interpolate(xs, ys, F) == f);
}

TEST_CASE("root finding with multiplicities") {
    for (auto [p, k] : std::vector<std::pair<uint32_t, int>>{{2, 5}, {3, 3}, {101, 1}, {10007, 2}}) {
        const FqField F = FqField::make(p, k);
        Rng rng(p + k);
        std::vector<FqElem> roots;
        FqPoly f{F.one()};
        for (int i = 0; i < 5; ++i) {
            const FqElem r = F.element_at(rng() % std::min<uint64_t>(F.order_u64(), 1u << 30));
            const int mult = 1 + static_cast<int>(rng() % 3);
            for (int m = 0; m < mult; ++m) {
                roots.push_back(r);
                f = fqpoly::mul(f, fqpoly::linear(r, F), F);
            }
        }
        // An irreducible quadratic over F contributes no roots.
        FqPoly irr = {F.one(), F.one(), F.one()};
        for (uint64_t i = 2; !fqpoly::distinct_roots(irr, F, rng).empty(); ++i) irr[0] = F.element_at(i);
        f = fqpoly::mul(f, irr, F);
        std::sort(roots.begin(), roots.end());
        CHECK(poly_roots(f, F, rng) == roots);
    }
}

TEST_CASE("distinct degree factorization") {
    const uint32_t p = 7;
    const FqField F = FqField::make(p, 1);
    // Product of irreducibles of degrees 1, 2 and 3.
    const FqPoly lin = fqpoly::linear(F.one(), F);
    const FqPoly quad = fqpoly::from_fp({1, 0, 1}, F);
    FpPoly cubic{1, 1, 0, 1};
    while (!fpoly::is_irreducible(cubic, p)) cubic[0]++;
    const FqPoly cub = fqpoly::from_fp(cubic, F);
    const auto ddf = fqpoly::distinct_degree_factorization(fqpoly::mul(fqpoly::mul(lin, quad, F), cub, F), F);
    REQUIRE(ddf.size() >= 4);
    CHECK(ddf[1] == lin);
    CHECK(ddf[2] == quad);
    CHECK(ddf[3] == cub);
}

TEST_CASE("univariate squarefree part in characteristic p") {
    const uint32_t p = 3;
    const FqField F = FqField::make(p, 2);
    // (X^3 - t)^2 * (X + 1) = (X - t^{1/3})^6 (X + 1)
    FqPoly a = {F.neg(F.gen()), F.zero(), F.zero(), F.one()};
    FqPoly f = fqpoly::mul(fqpoly::mul(a, a, F), fqpoly::linear(F.neg(F.one()), F), F);
    const FqPoly s = fqpoly::squarefree_part(f, F);
    CHECK(fqpoly::degree(s) == 2);
    CHECK(fqpoly::rem(f, s, F).empty());
}
