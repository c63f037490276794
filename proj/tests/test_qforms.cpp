#include <random>

#include "doctest.h"

#include "cm/error.hpp"
#include "cm/fp.hpp"
#include "cm/qforms.hpp"

using namespace cm;

namespace {

// Euler's criterion for odd primes, the mod-8 rule for 2.
int legendre_oracle(int64_t D, uint64_t l) {
    if (l == 2) {
        const int64_t r = ((D % 8) + 8) % 8;
        if (r % 2 == 0) return 0;
        return (r == 1 || r == 7) ? 1 : -1;
    }
    const int64_t a = ((D % static_cast<int64_t>(l)) + static_cast<int64_t>(l)) % static_cast<int64_t>(l);
    if (a == 0) return 0;
    uint64_t acc = 1, base = a, e = (l - 1) / 2;
    while (e) {
        if (e & 1) acc = acc * base % l;
        base = base * base % l;
        e >>= 1;
    }
    return acc == 1 ? 1 : -1;
}

// h(D) from h(d_K) by the class number formula for orders.
int64_t order_class_number(const OrderSpec& o) {
    const ClassGroup maximal(o.dK);
    int64_t num = maximal.size() * o.f, den = 1;
    int64_t f = o.f;
    for (int64_t q = 2; q <= f; ++q) {
        if (f % q) continue;
        while (f % q == 0) f /= q;
        num *= q - kronecker(o.dK, q);
        den *= q;
    }
    return num / den * unit_count(o.D) / unit_count(o.dK);
}

}  // namespace

TEST_CASE("reduce_form") {
    CHECK(reduce_form({1, 0, 1}) == QuadForm{1, 0, 1});
    CHECK(reduce_form({6, 1, 1}) == QuadForm{1, 1, 6});
    const QuadForm r = reduce_form({3, 2, 4});
    CHECK(r.discriminant() == -44);
    CHECK(std::abs(r.b) <= r.a);
    CHECK(r.a <= r.c);
    CHECK_THROWS_AS(reduce_form({-1, 0, -1}), Error);
}

TEST_CASE("reduction is canonical under random SL2(Z) moves") {
    std::mt19937_64 rng(5);
    for (int64_t D : {-23, -47, -84, -164, -339}) {
        const ClassGroup G(D);
        for (const QuadForm& f : G.forms()) {
            CHECK(reduce_form(f) == f);
            QuadForm g = f;
            for (int step = 0; step < 8; ++step) {
                // (a, b, c) -> (a, b + 2ka, ak^2 + bk + c) or swap to (c, -b, a)
                if (rng() % 2) {
                    const int64_t k = static_cast<int64_t>(rng() % 5) - 2;
                    g = {g.a, g.b + 2 * k * g.a, g.a * k * k + g.b * k + g.c};
                } else {
                    g = {g.c, -g.b, g.a};
                }
            }
            CHECK(reduce_form(g) == f);
        }
    }
}

TEST_CASE("class groups of small discriminants") {
    CHECK(ClassGroup(-4).size() == 1);
    const ClassGroup G23(-23);
    REQUIRE(G23.size() == 3);
    CHECK(G23.forms() == std::vector<QuadForm>{{1, 1, 6}, {2, -1, 3}, {2, 1, 3}});
    const int g = G23.index_of({2, 1, 3});
    CHECK(G23.form(G23.mul(g, g)) == QuadForm{2, -1, 3});
    const ClassGroup G20(-20);
    CHECK(G20.forms() == std::vector<QuadForm>{{1, 0, 5}, {2, 2, 3}});
    CHECK_THROWS_AS(ClassGroup(-5), Error);
    CHECK_THROWS_AS(ClassGroup(8), Error);
}

TEST_CASE("composition is an abelian group law for |D| <= 500") {
    for (int64_t D = -3; D >= -500; --D) {
        if (!is_discriminant(D)) continue;
        const ClassGroup G(D);
        const int h = G.size();
        for (int i = 0; i < h; ++i) {
            CHECK(G.mul(i, 0) == i);
            CHECK(G.mul(i, G.inverse(i)) == 0);
            for (int j = 0; j < h; ++j) {
                CHECK(G.mul(i, j) == G.mul(j, i));
                for (int k = 0; k < h; ++k) CHECK(G.mul(G.mul(i, j), k) == G.mul(i, G.mul(j, k)));
            }
        }
    }
}

TEST_CASE("class number formula for non-maximal orders") {
    int checked = 0;
    for (int64_t D = -3; D >= -3000; --D) {
        if (!is_discriminant(D)) continue;
        const OrderSpec o = OrderSpec::from_discriminant(D);
        CHECK(o.dK * o.f * o.f == D);
        CHECK(is_fundamental_discriminant(o.dK));
        if (o.f == 1) continue;
        CHECK(ClassGroup(D).size() == order_class_number(o));
        ++checked;
    }
    CHECK(checked > 100);
}

TEST_CASE("kronecker symbol") {
    CHECK(kronecker(-23, 2) == 1);
    CHECK(kronecker(-4, 7) == -1);
    CHECK(kronecker(-7, 7) == 0);
    for (int64_t D : {-3, -4, -7, -8, -15, -20, -23, -71, -104}) {
        for (uint64_t l = 2; l < 200; ++l) {
            if (!is_prime(l)) continue;
            CHECK(kronecker(D, l) == legendre_oracle(D, l));
        }
    }
}

TEST_CASE("prime classes") {
    CHECK(prime_class(2, -23) == QuadForm{2, 1, 3});
    CHECK(prime_class(3, -23) == QuadForm{2, -1, 3});
    CHECK(prime_class(5, -4) == QuadForm{1, 0, 1});
    CHECK_THROWS_AS(prime_class(3, -4), Error);
    for (int64_t D : {-23, -47, -56, -71, -184}) {
        const ClassGroup G(D);
        for (uint64_t l = 2; l < 100; ++l) {
            if (!is_prime(l) || kronecker(D, l) != 1) continue;
            const QuadForm q = prime_class(l, D);
            const int i = G.index_of(q);
            CHECK(G.mul(i, G.inverse(i)) == 0);
            // The class represents l.
            bool represents = false;
            for (int64_t x = -12; x <= 12 && !represents; ++x)
                for (int64_t y = -12; y <= 12 && !represents; ++y)
                    represents = q.a * x * x + q.b * x * y + q.c * y * y == static_cast<int64_t>(l);
            CHECK(represents);
        }
    }
}

TEST_CASE("split prime search") {
    CHECK(find_split_prime(-7, -11, {}, 2) == 23);
    CHECK(find_split_prime(-4, -4, {}, 2) == 5);
    CHECK(find_split_prime(-3, -3, {7}, 7) == 13);
    // 5 divides the conductor of -100
    CHECK(find_split_prime(-4 * 25, -4, {}, 2) == 13);
    CHECK_THROWS_AS(find_split_prime(-4, -3, {}, 2, 12), Error);
}
