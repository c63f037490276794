#include "cm/experiments.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "cm/classpoly.hpp"
#include "cm/curves.hpp"
#include "cm/error.hpp"
#include "cm/fp.hpp"

namespace cm {

namespace {

// Least d | F.degree() with x in F_{p^d}.
int element_degree(const FqElem& x, const FqField& F) {
    const int e = F.degree();
    for (int d = 1; d < e; ++d) {
        if (e % d) continue;
        FqElem y = x;
        for (int i = 0; i < d; ++i) y = F.frobenius(y);
        if (y == x) return d;
    }
    return e;
}

std::size_t generated_size(const ClassGroup& G, const std::vector<int>& gens) {
    std::vector<bool> in(G.size(), false);
    std::vector<int> elems{G.identity()};
    in[G.identity()] = true;
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (int g : gens) {
            const int y = G.mul(elems[i], g);
            if (!in[y]) {
                in[y] = true;
                elems.push_back(y);
            }
        }
    return elems.size();
}

}  // namespace

std::vector<int64_t> fundamental_discriminants(int h_min, int h_max, int64_t limit, std::size_t max_count) {
    std::vector<int64_t> out;
    for (int64_t D = -3; D > -limit && out.size() < max_count; --D) {
        if (!is_fundamental_discriminant(D)) continue;
        const int h = ClassGroup(D).size();
        if (h >= h_min && h <= h_max) out.push_back(D);
    }
    return out;
}

SurveyCell survey_cell(int64_t D, uint64_t p, int modpoly_bound, uint64_t seed) {
    SurveyCell c;
    c.D = D;
    c.p = static_cast<uint32_t>(p);
    const ClassGroup G(D);
    c.h = G.size();
    c.split = kronecker(D, p) == 1;
    const ReducedJSet rs = reduced_j_set(D, p, seed);
    c.roots = rs.roots.size();
    c.degree = 1;
    for (const auto& r : rs.roots) c.degree = std::lcm(c.degree, element_degree(r, rs.field));
    auto flag = [&c](bool ok, const std::string& what) {
        if (!ok) c.violations.push_back(what);
    };

    if (!c.split) {
        c.expected_degree = 2;
        flag(rs.kind == ReductionKind::Supersingular, "non-split p reported ordinary");
        flag(c.degree <= 2, "supersingular root outside F_{p^2}");
        flag(c.roots >= 1 && c.roots <= static_cast<std::size_t>(c.h), "supersingular root count");
        for (const auto& r : rs.roots) flag(is_supersingular(r, rs.field), "root of H_D is ordinary at non-split p");
        return c;
    }

    c.expected_degree = G.element_order(G.index_of(prime_class(p, D)));
    flag(rs.kind == ReductionKind::Ordinary, "split p reported supersingular");
    flag(c.roots == static_cast<std::size_t>(c.h), "split p: root count differs from h");
    flag(c.degree == c.expected_degree, "split p: field degree differs from the order of [p]");
    for (const auto& r : rs.roots)
        if (rs.field.degree() <= 2) flag(!is_supersingular(r, rs.field), "root of H_D is supersingular at split p");

    std::vector<int> gens;
    for (int l = 2; l <= modpoly_bound; ++l) {
        if (!is_prime(static_cast<uint64_t>(l)) || static_cast<uint64_t>(l) == p || kronecker(D, l) != 1) continue;
        c.primes.push_back(l);
        gens.push_back(G.index_of(prime_class(l, D)));
    }
    c.generated = generated_size(G, gens);
    Rng rng(seed);
    const auto orbit = horizontal_orbit(rs.roots.front(), D, c.primes, rs.field, rng);
    c.orbit = orbit.size();
    c.full = orbit == rs.roots;
    flag(std::includes(rs.roots.begin(), rs.roots.end(), orbit.begin(), orbit.end()), "orbit leaves the roots of H_D");
    flag(c.orbit == c.generated, "orbit size differs from the generated subgroup");
    flag(c.full == (c.generated == static_cast<std::size_t>(c.h)), "orbit is full but the classes do not generate");
    return c;
}

SurveySummary torsor_survey(int h_max, uint64_t p_max, int modpoly_bound, uint64_t seed, bool keep_rows) {
    // Every fundamental D with h(D) <= 8 has |D| <= 6307.
    require(h_max >= 1 && h_max <= 8, ErrorKind::InvalidInput, "h_max must be in 1..8");
    SurveySummary s;
    for (int64_t D : fundamental_discriminants(1, h_max, 10000))
        for (uint64_t p = 5; p <= p_max; ++p) {
            if (!is_prime(p)) continue;
            SurveyCell c = survey_cell(D, p, modpoly_bound, seed);
            ++s.cells;
            if (c.split) {
                ++s.split_cells;
                if (!c.full) ++s.not_full;
            }
            bool dich = false, tors = false;
            for (const auto& v : c.violations) (v.find("orbit") != std::string::npos ? tors : dich) = true;
            s.dichotomy_violations += dich;
            s.torsor_violations += tors;
            if (keep_rows) s.rows.push_back(std::move(c));
        }
    return s;
}

std::vector<Thm2FamilyRow> thm2_family(const std::vector<int64_t>& discs) {
    std::vector<Thm2FamilyRow> rows;
    for (std::size_t i = 0; i < discs.size(); ++i)
        for (std::size_t j = i + 1; j < discs.size(); ++j) {
            Thm2FamilyRow r;
            r.D1 = discs[i];
            r.D2 = discs[j];
            r.h1 = ClassGroup(r.D1).size();
            r.h2 = ClassGroup(r.D2).size();
            r.same_field = OrderSpec::from_discriminant(r.D1).dK == OrderSpec::from_discriminant(r.D2).dK;
            r.p = find_split_prime(r.D1, r.D2, {}, 5);
            r.N = galois_image_auto(r.D1, r.D2).size();
            r.report = thm2_search(r.N, r.D1, r.D2, r.p, 1, 1);
            rows.push_back(r);
        }
    return rows;
}

std::vector<PipelineFixture> pipeline_fixtures() {
    std::vector<PipelineFixture> out;
    const uint32_t p = 7;
    const BivarFp X = BivarFp::x(p), Y = BivarFp::y(p);
    // -31: 7 and 2 both split, so the pair lies on a horizontal 2-isogeny.
    const int64_t D = -31;
    const CMPairSpec diag = make_cm_pair(D, D, p, 0, 0);
    out.push_back({"diagonal", make_plane_curve(X - Y), {diag}, {2, 3, 5, 11, 13}, 20, "modular(1,0,0)"});

    Rng rng(0);
    const auto nb = horizontal_isogeny_step(diag.x1, D, 2, diag.field1, rng);
    require(!nb.empty(), ErrorKind::Internal, "no horizontal 2-isogeny for the phi2 fixture");
    const std::size_t i2 = std::find(diag.roots2.begin(), diag.roots2.end(), nb[0]) - diag.roots2.begin();
    out.push_back({"phi2", make_plane_curve(modular_polynomial_mod(2, p)), {make_cm_pair(D, D, p, 0, i2)},
                   {2, 3, 5, 11, 13}, 20, "modular(2,0,0)"});

    // X = 0 = j(-3); 7 splits in Q(sqrt -3).
    out.push_back({"fiber", make_plane_curve(X), {make_cm_pair(-3, D, p, 0, 0)}, {2, 3, 5}, 20, "fiber"});

    const uint32_t q = 5;
    const BivarFp line = BivarFp::x(q) + BivarFp::y(q) - BivarFp::constant(q, 1);
    out.push_back({"line", make_plane_curve(line), {}, {2, 3, 7}, 20, "non-special-up-to(20)"});
    return out;
}

}  // namespace cm
