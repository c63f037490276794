#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "doctest.h"

#include "cm/classpoly.hpp"
#include "cm/curves.hpp"
#include "cm/error.hpp"
#include "cm/orbits.hpp"

using namespace cm;

namespace {

uint64_t least_prime(uint64_t from, const std::function<bool(uint64_t)>& ok) {
    for (uint64_t p = from;; ++p)
        if (is_prime(p) && ok(p)) return p;
}

bool split_ordinary(int64_t D, uint64_t p) {
    const OrderSpec o = OrderSpec::from_discriminant(D);
    return kronecker(o.dK, p) == 1;
}

}  // namespace

TEST_CASE("field prime classes") {
    // Same ideal in every order: (l, f b0, .) lies above the class of (l, b0, .).
    for (int64_t dK : {-23, -47, -71, -7}) {
        for (int64_t f : {1, 2, 3, 5}) {
            const int64_t D = dK * f * f;
            for (uint64_t l : {2ull, 3ull, 7ull, 11ull, 13ull, 17ull, 19ull, 29ull}) {
                if (kronecker(D, l) != 1) continue;
                const QuadForm q = field_prime_class(l, D);
                CHECK(q.discriminant() == D);
                const ClassGroup G(D);
                const int c = G.index_of(q);
                const int c0 = G.index_of(prime_class(l, D));
                CHECK((c == c0 || c == G.inverse(c0)));
            }
        }
    }
}

TEST_CASE("Galois image") {
    const GaloisImage g = galois_image(-23, -4, 100);
    CHECK(g.size() == 3);
    CHECK(g.surjective());
    for (const auto& [a, b] : g.elements) CHECK(b == 0);

    CHECK(galois_image(-3, -3, 50).size() == 1);

    // Same field: only the matched pairs ([l], [l]) are Frobenius elements.
    const GaloisImage d = galois_image(-23, -23, 100);
    CHECK(d.same_field);
    CHECK(d.size() == 3);
    for (const auto& [a, b] : d.elements) CHECK(a == b);

    // Coprime class numbers in different fields force the full product.
    CHECK(galois_image(-23, -20, 200).size() == 6);
    CHECK(galois_image(-47, -71, 400).size() == 35);

    // Too small a bound is reported, not papered over.
    CHECK_THROWS_AS(galois_image(-71, -4, 2), Error);

    for (auto [D1, D2] : std::vector<std::pair<int64_t, int64_t>>{{-23, -31}, {-56, -56}, {-39, -55}, {-84, -20}, {-92, -23}}) {
        const GaloisImage a = galois_image_auto(D1, D2);
        CHECK(a.surjective());
        CHECK((a.G1->size() * a.G2->size()) % static_cast<int>(a.size()) == 0);
        for (uint64_t l : a.primes) CHECK(a.contains(a.G1->index_of(field_prime_class(l, D1)),
                                                     a.G2->index_of(field_prime_class(l, D2))));
    }
}

TEST_CASE("torsor labeling predicts unseen isogenies") {
    Rng rng(0);
    for (int64_t D : {-47, -71, -199, -167}) {
        const ClassGroup G(D);
        const uint64_t p = least_prime(101, [&](uint64_t q) { return kronecker(D, q) == 1; });
        const ReducedJSet s = reduced_j_set(D, p);
        const auto lab = torsor_labeling(s.roots[0], G, s.field, rng, 13);
        std::vector<FqElem> sorted = lab;
        std::sort(sorted.begin(), sorted.end());
        CHECK(sorted == s.roots);
        // l = 17, 19 were not used to build the labeling.
        for (int l : {17, 19}) {
            if (kronecker(D, l) != 1) continue;
            const int g = G.index_of(field_prime_class(l, D));
            for (int c = 0; c < G.size(); ++c) {
                const auto nb = horizontal_isogeny_step(lab[c], D, l, s.field, rng);
                CHECK(std::find(nb.begin(), nb.end(), lab[G.mul(g, c)]) != nb.end());
            }
        }
    }
}

TEST_CASE("orbit model") {
    const uint64_t p = least_prime(5, [](uint64_t q) { return split_ordinary(-23, q) && split_ordinary(-4, q); });
    const CMPairSpec spec = make_cm_pair(-23, -4, p);
    const OrbitModel m = orbit_model(spec, galois_image(-23, -4, 100));
    CHECK(m.size() == 3);
    std::set<FqElem> first, second;
    for (const auto& [a, b] : m.points()) {
        first.insert(a);
        second.insert(b);
    }
    CHECK(std::vector<FqElem>(first.begin(), first.end()) == spec.roots1);
    CHECK(second.size() == 1);

    const CMPairSpec trivial = make_cm_pair(-3, -4, 13);
    CHECK(orbit_model(trivial, galois_image(-3, -4, 50)).size() == 1);

    // Projections are Frobenius-stable.
    for (auto [D1, D2] : std::vector<std::pair<int64_t, int64_t>>{{-47, -71}, {-23, -23}, {-56, -20}}) {
        const uint64_t q = least_prime(30, [&](uint64_t r) { return split_ordinary(D1, r) && split_ordinary(D2, r); });
        const CMPairSpec s = make_cm_pair(D1, D2, q, 1, 0);
        const OrbitModel mm = orbit_model(s, galois_image_auto(s.D1r, s.D2r));
        CHECK(mm.size() % mm.gamma.size() == 0);
        CHECK(mm.suborbits.size() <= 4);
        std::set<FqElem> a, b;
        for (const auto& [x, y] : mm.points()) {
            a.insert(x);
            b.insert(y);
        }
        for (const auto& x : a) CHECK(a.count(s.field1.frobenius(x)));
        for (const auto& y : b) CHECK(b.count(s.field2.frobenius(y)));
        CHECK(a.size() == s.roots1.size());
        CHECK(b.size() == s.roots2.size());
        const auto pts = mm.points();
        CHECK(pts.size() == std::set<std::pair<FqElem, FqElem>>(pts.begin(), pts.end()).size());
    }
    CHECK_THROWS_AS(make_cm_pair(-23, -4, 7), Error);
}

TEST_CASE("thm2 search") {
    const Thm2Report big = thm2_search(1000000, -4, -4, 0, 1, 1);
    REQUIRE(big.admissible);
    CHECK(*big.ell == 17);  // least prime = 1 mod 4 above ln(10^6)
    CHECK(big.margin_count == doctest::Approx(1000000 - 2 * 18 * 18));
    CHECK(big.margin_log == doctest::Approx(17 - std::log(1e6)));
    const Thm2Report small = thm2_search(10, -4, -4, 0, 1, 1);
    CHECK_FALSE(small.admissible);
    CHECK_FALSE(small.ell.has_value());
    // Brute-force the two inequalities.
    for (uint64_t N : {50ull, 300ull, 5000ull, 123456ull})
        for (int64_t d : {1, 2, 5}) {
            const Thm2Report r = thm2_search(N, -23, -31, 0, d, 1);
            std::optional<uint64_t> want;
            for (uint64_t l = 2; 2.0 * d * (l + 1) * (l + 1) < static_cast<double>(N); ++l)
                if (is_prime(l) && l > std::log(static_cast<double>(N)) && kronecker(-23, l) == 1 && kronecker(-31, l) == 1) {
                    want = l;
                    break;
                }
            CHECK(r.ell == want);
        }
}

TEST_CASE("Frobenius lifting") {
    int cells = 0;
    for (auto [D1, D2] : std::vector<std::pair<int64_t, int64_t>>{{-23, -4}, {-47, -71}, {-23, -23}, {-39, -7}}) {
        const uint64_t p = least_prime(40, [&](uint64_t r) { return split_ordinary(D1, r) && split_ordinary(D2, r); });
        const CMPairSpec s = make_cm_pair(D1, D2, p);
        const OrbitModel m = orbit_model(s, galois_image_auto(s.D1r, s.D2r));
        for (int l = 2; l <= 13; ++l) {
            if (!is_prime(l) || static_cast<uint64_t>(l) == p) continue;
            const bool split = kronecker(D1, l) == 1 && kronecker(D2, l) == 1;
            if (split) {
                CHECK(verify_frobenius_lifting(m, l));
                ++cells;
            } else if (kronecker(D1, l) == -1 && kronecker(D2, l) == -1) {
                CHECK_FALSE(verify_frobenius_lifting(m, l));
            }
        }
    }
    CHECK(cells >= 4);
}

TEST_CASE("projection index from genus theory") {
    // Q(sqrt -7) lies in the genus field of discriminant -56.
    CHECK(projection_index(-56, -7) == 2);
    CHECK(projection_index(-7, -56 / 4) == 1);
    CHECK(projection_index(-55, -11) == 2);
    CHECK(projection_index(-36, -3) == 2);
    CHECK(projection_index(-23, -4) == 1);
    const GaloisImage g = galois_image_auto(-7, -56);
    CHECK(g.complete());
    CHECK_FALSE(g.surjective());
    CHECK(g.size() * 2 == static_cast<std::size_t>(g.G1->size() * g.G2->size()));

    // With a generous bound every pair has exactly the predicted projections.
    std::vector<int64_t> discs;
    for (int64_t D = -3; D >= -60; --D)
        if (is_discriminant(D)) discs.push_back(D);
    int index_two = 0;
    for (std::size_t i = 0; i < discs.size(); ++i)
        for (std::size_t k = i; k < discs.size(); ++k) {
            const GaloisImage a = galois_image(discs[i], discs[k], 2000);
            CHECK(a.complete());
            index_two += projection_index(discs[k], a.G1->order().dK) == 2;
        }
    CHECK(index_two > 0);
}
