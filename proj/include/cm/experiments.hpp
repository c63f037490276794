#pragma once

// Batch experiments shared by the command-line tool and the acceptance run:
// reduction dichotomy and torsor sweeps, the split-prime search over a family
// of discriminant pairs, and the special-curve pipeline on fixed fixtures.

#include <cstdint>
#include <string>
#include <vector>

#include "cm/special.hpp"

namespace cm {

// Fundamental discriminants -limit < D < 0 with h(D) in [h_min, h_max], by increasing |D|.
std::vector<int64_t> fundamental_discriminants(int h_min, int h_max, int64_t limit, std::size_t max_count = SIZE_MAX);

struct SurveyCell {
    int64_t D = 0;
    uint32_t p = 0;
    int h = 0;
    bool split = false;
    int degree = 0;          // degree of the field holding the roots
    int expected_degree = 0; // split: order of the class of p; otherwise 2
    std::size_t roots = 0;   // distinct roots of H_D mod p
    // Split cells only: classes of split l <= bound, l != p.
    std::vector<int> primes;
    std::size_t generated = 0;  // size of the subgroup they generate
    std::size_t orbit = 0;      // horizontal orbit of the first root
    bool full = false;          // orbit == every root
    std::vector<std::string> violations;
};

// Non-split p: every root in F_{p^2} and supersingular. Split p: h distinct
// roots whose least common field is F_{p^e}, e = order of the class of p,
// all ordinary; the orbit is a subset of the roots of size #<[l]>.
SurveyCell survey_cell(int64_t D, uint64_t p, int modpoly_bound, uint64_t seed);

struct SurveySummary {
    std::size_t cells = 0, split_cells = 0;
    std::size_t dichotomy_violations = 0;  // criterion on reduction type and field
    std::size_t torsor_violations = 0;     // orbit not a free orbit of <[l]> inside the roots
    std::size_t not_full = 0;              // split cells where the classes do not generate Pic(D)
    std::vector<SurveyCell> rows;
};

SurveySummary torsor_survey(int h_max, uint64_t p_max, int modpoly_bound, uint64_t seed, bool keep_rows);

struct Thm2FamilyRow {
    int64_t D1 = 0, D2 = 0;
    int h1 = 0, h2 = 0;
    bool same_field = false;
    uint64_t p = 0;
    uint64_t N = 0;  // #Gamma, the size of the reduced orbit for split p
    Thm2Report report;
};

// Pairs of distinct discriminants from `discs` (i < j), d1 = d2 = 1.
std::vector<Thm2FamilyRow> thm2_family(const std::vector<int64_t>& discs);

struct PipelineFixture {
    std::string name;
    PlaneCurveFp curve;
    std::vector<CMPairSpec> sigma;
    std::vector<int> ells;
    int bound = 20;
    std::string expected;  // verdict of the first non-fibre component, or "fiber"
};

// "diagonal", "phi2", "fiber", "line".
std::vector<PipelineFixture> pipeline_fixtures();

}  // namespace cm
