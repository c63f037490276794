// cmtool: command-line front end for the cm library.
//
// Exit codes: 0 success, 1 domain error, 2 usage error.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cm/classpoly.hpp"
#include "cm/curves.hpp"
#include "cm/error.hpp"
#include "cm/experiments.hpp"
#include "cm/groups.hpp"
#include "cm/modpoly.hpp"
#include "cm/orbits.hpp"
#include "cm/qforms.hpp"
#include "cm/special.hpp"

using json = nlohmann::json;
using namespace cm;

namespace {

struct RunConfig {
    uint64_t seed = 0;
    std::string cache_dir;
    bool json = false;
    uint64_t prime_bound = 0;  // 0: command default
    std::string out;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const RunConfig& cfg, const json& doc, const std::string& text) {
    std::ostringstream os;
    if (cfg.json) {
        json d = doc;
        d["schema"] = "1";
        os << d.dump(2) << "\n";
    } else {
        os << text;
    }
    if (cfg.out.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream f(cfg.out);
        require(static_cast<bool>(f), ErrorKind::InvalidInput, "cannot write " + cfg.out);
        f << os.str();
    }
}

std::string forms_text(const std::vector<QuadForm>& forms) {
    std::string s;
    for (const auto& f : forms) s += f.to_string() + "\n";
    return s;
}

json elems_json(const std::vector<FqElem>& xs, const FqField& F) {
    json a = json::array();
    for (const auto& x : xs) a.push_back(F.format(x));
    return a;
}

std::string elems_text(const std::vector<FqElem>& xs, const FqField& F) {
    std::string s;
    for (const auto& x : xs) s += F.format(x) + "\n";
    return s;
}

FqElem parse_j(const std::string& s, const FqField& F) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(s, &pos);
        if (pos == s.size()) return F.from_int(v);
    } catch (const std::exception&) {
    }
    throw UsageError("j must be an integer: " + s);
}

void cmd_classgroup(const RunConfig& cfg, int64_t D) {
    const ClassGroup G(D);
    json doc{{"D", D}, {"h", G.size()}, {"forms", json::array()}};
    for (const auto& f : G.forms()) doc["forms"].push_back({f.a, f.b, f.c});
    emit(cfg, doc, "h=" + std::to_string(G.size()) + "\n" + forms_text(G.forms()));
}

void cmd_hilbert(const RunConfig& cfg, int64_t D) {
    const IntPoly H = hilbert_class_polynomial(D);
    json coeffs = json::array();
    for (const auto& c : H.coeffs()) coeffs.push_back(c.get_str());
    emit(cfg, {{"D", D}, {"degree", H.degree()}, {"coefficients", coeffs}}, H.to_string() + "\n");
}

void cmd_reduce_cm(const RunConfig& cfg, int64_t D, uint64_t p) {
    const ReducedJSet r = reduced_j_set(D, p, cfg.seed);
    const std::string kind = r.kind == ReductionKind::Ordinary ? "ordinary" : "supersingular";
    json doc{{"D", D},       {"D_reduced", r.D_reduced}, {"p", p}, {"kind", kind}, {"residue_degree", r.residue_degree},
             {"roots", elems_json(r.roots, r.field)}};
    std::string text = "kind " + kind + "\nresidue_degree " + std::to_string(r.residue_degree) + "\nD' " +
                       std::to_string(r.D_reduced) + "\n" + elems_text(r.roots, r.field);
    emit(cfg, doc, text);
}

void cmd_modpoly(const RunConfig& cfg, int l) {
    const BivarIntPoly& phi = modular_polynomial(l);
    const std::string text = format_modular_polynomial(l, phi);
    emit(cfg, {{"ell", l}, {"terms", phi.terms().size()}, {"text", text}}, text);
}

void cmd_hecke(const RunConfig& cfg, const std::string& js, uint64_t p, int l, int degree) {
    const FqField F = FqField::make(p, degree);
    Rng rng(cfg.seed);
    const HeckeImage h = hecke_image(parse_j(js, F), l, F, rng);
    json outside = json::object();
    std::string text = elems_text(h.roots, F);
    for (const auto& [d, n] : h.outside) {
        outside[std::to_string(d)] = n;
        text += "outside degree " + std::to_string(d) + ": " + std::to_string(n) + "\n";
    }
    emit(cfg, {{"ell", l}, {"p", p}, {"degree", degree}, {"roots", elems_json(h.roots, F)}, {"outside", outside}}, text);
}

void cmd_enddisc(const RunConfig& cfg, const std::string& js, uint64_t p, int degree) {
    const FqField F = FqField::make(p, degree);
    const int64_t D = endomorphism_discriminant(parse_j(js, F), F);
    emit(cfg, {{"p", p}, {"degree", degree}, {"D", D}}, std::to_string(D) + "\n");
}

void cmd_volcano(const RunConfig& cfg, int64_t D, uint64_t p, int l) {
    const ReducedJSet r = reduced_j_set(D, p, cfg.seed);
    require(r.kind == ReductionKind::Ordinary, ErrorKind::Precondition, "p is not split in the order");
    Rng rng(cfg.seed);
    const auto orbit = horizontal_orbit(r.roots.front(), r.D_reduced, {l}, r.field, rng);
    emit(cfg, {{"D", D}, {"p", p}, {"ell", l}, {"degree", r.field.degree()}, {"orbit", elems_json(orbit, r.field)}},
         elems_text(orbit, r.field));
}

OrbitModel build_orbit(const RunConfig& cfg, int64_t D1, int64_t D2, uint64_t p) {
    const CMPairSpec spec = make_cm_pair(D1, D2, p);
    const GaloisImage g = cfg.prime_bound ? galois_image(spec.D1r, spec.D2r, cfg.prime_bound)
                                          : galois_image_auto(spec.D1r, spec.D2r);
    return orbit_model(spec, g);
}

void cmd_orbit(const RunConfig& cfg, int64_t D1, int64_t D2, uint64_t p) {
    const OrbitModel m = build_orbit(cfg, D1, D2, p);
    std::set<FqElem> pr1, pr2;
    for (const auto& [a, b] : m.points()) {
        pr1.insert(a);
        pr2.insert(b);
    }
    json doc{{"D1", D1},
             {"D2", D2},
             {"p", p},
             {"size", m.size()},
             {"suborbits", m.suborbits.size()},
             {"projection1", pr1.size()},
             {"projection2", pr2.size()},
             {"gamma_primes", m.gamma.primes}};
    std::ostringstream t;
    t << "size " << m.size() << "\nsuborbits " << m.suborbits.size() << "\nprojection1 " << pr1.size()
      << "\nprojection2 " << pr2.size() << "\n";
    emit(cfg, doc, t.str());
}

json thm2_json(const Thm2Report& r) {
    json ell = r.ell ? json(*r.ell) : json(nullptr);
    return {{"N", r.N},
            {"ell", ell},
            {"margin_count", r.margin_count},
            {"margin_log", r.margin_log},
            {"admissible", r.admissible}};
}

void cmd_thm2(RunConfig cfg, int64_t D1, int64_t D2, uint64_t p, int64_t d1, int64_t d2) {
    const OrbitModel m = build_orbit(cfg, D1, D2, p);
    cfg.json = true;  // the report is always JSON
    emit(cfg, thm2_json(thm2_search(m, d1, d2)), "");
}

BivarFp read_poly_file(const std::string& path, uint32_t p) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot read " + path);
    std::vector<std::array<int64_t, 3>> terms;
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream is(line);
        std::array<int64_t, 3> t{};
        if (!(is >> t[0])) continue;
        std::string rest;
        if (!(is >> t[1] >> t[2]) || (is >> rest) || t[0] < 0 || t[1] < 0)
            fail(ErrorKind::Format, path + ":" + std::to_string(lineno) + ": expected \"i j c\"");
        terms.push_back(t);
    }
    return BivarFp::from_terms(p, terms);
}

json certificate_json(const SpecialityCertificate& c) {
    json comps = json::array();
    for (const auto& v : c.components) {
        json e{{"verdict", v.to_string()}, {"component", v.component.to_string()}};
        if (v.witness_l) e["witness_ell"] = v.witness_l;
        comps.push_back(e);
    }
    return {{"p", c.p}, {"components", comps}};
}

json pipeline_json(const PipelineReport& r) {
    json steps = json::array();
    for (const auto& s : r.steps)
        steps.push_back({{"ell", s.l}, {"split", s.split}, {"above_12d1", s.above_12d1}, {"dimension", s.dimension}});
    return {{"steps", steps}, {"chain", r.chain}, {"certificate", certificate_json(r.certificate)}};
}

void cmd_check_special(const RunConfig& cfg, const std::string& file, uint64_t p, int bound, std::vector<int> ells) {
    if (ells.empty()) ells = {2, 3, 5, 7, 11, 13};
    const PlaneCurveFp Z = make_plane_curve(read_poly_file(file, static_cast<uint32_t>(p)));
    const PipelineReport r = andre_oort_pipeline({}, Z, ells, bound);
    RunConfig c = cfg;
    c.json = true;
    emit(c, pipeline_json(r), "");
}

void cmd_verify_groups(const RunConfig& cfg, int l) {
    if (l != 3 && l != 5) throw UsageError("--ell must be 3 or 5");
    std::vector<std::pair<std::string, bool>> rows;
    const FiniteGroup S = sl2(l);
    rows.push_back({"order l(l^2-1)", S.size() == l * (l * l - 1)});
    std::vector<std::size_t> sizes;
    for (const auto& N : normal_subgroups(S)) sizes.push_back(N.size());
    if (l == 5) {
        rows.push_back({"normal subgroups 1, +-1, SL2", sizes == std::vector<std::size_t>{1, 2, 120}});
    } else {
        rows.push_back({"normal subgroups 1, +-1, Q8, SL2 (four)", sizes == std::vector<std::size_t>{1, 2, 8, 24}});
    }
    // Goursat on random subdirect subgroups of SL2^2.
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<int> pick(0, S.size() - 1);
    int tested = 0, good = 0;
    for (int trial = 0; trial < 400 && tested < (l == 3 ? 100 : 20); ++trial) {
        std::vector<std::pair<int, int>> gens;
        for (int i = 0; i < 1 + trial % 3; ++i) gens.push_back({pick(rng), pick(rng)});
        try {
            const GoursatData g = goursat_invariants(S, S, gens);
            ++tested;
            good += g.well_defined && g.is_isomorphism && g.reconstructs && g.index_formula;
        } catch (const Error&) {
        }
    }
    rows.push_back({"goursat reconstruction (" + std::to_string(tested) + " subgroups)", tested > 0 && good == tested});
    if (l == 3) {
        const auto ns = normal_subgroups(S);
        const AutomLemmaReport r = verify_autom_extension_lemma(S, ns[2]);
        rows.push_back({"lemma: SL2(F3) over Q8, identity only", r.hypotheses_hold && r.nonidentity == 0});
        const FiniteGroup C4 = cyclic_group(4);
        const AutomLemmaReport c = verify_autom_extension_lemma(C4, C4.generated({2}));
        rows.push_back({"lemma: Z/4 over Z/2, counterexample", !c.hypotheses_hold && c.nonidentity == 1});
    } else {
        const Psl2AutReport r = psl2_automorphisms(5);
        rows.push_back({"|Aut PSL2(F5)| = 120", r.automorphisms == 120});
        rows.push_back({"automorphisms induced by GL2", r.all_induced && r.induced == r.automorphisms});
        rows.push_back({"outer automorphism from a non-square determinant", r.outer_found});
    }
    json doc{{"ell", l}, {"checks", json::array()}};
    std::string text;
    bool all = true;
    for (const auto& [name, ok] : rows) {
        doc["checks"].push_back({{"name", name}, {"pass", ok}});
        text += std::string(ok ? "PASS  " : "FAIL  ") + name + "\n";
        all = all && ok;
    }
    doc["pass"] = all;
    emit(cfg, doc, text);
    if (!all) fail(ErrorKind::Internal, "group checks failed");
}

void run_thm2_family(const RunConfig& cfg, int count, int h_min) {
    const auto discs = fundamental_discriminants(h_min, 1 << 30, 1 << 20, static_cast<std::size_t>(count));
    const auto rows = thm2_family(discs);
    json arr = json::array();
    std::ostringstream t;
    t << "D1,D2,h1,h2,same_field,p,N,ell,margin_count,margin_log,admissible\n";
    for (const auto& r : rows) {
        json e = thm2_json(r.report);
        e["D1"] = r.D1;
        e["D2"] = r.D2;
        e["h1"] = r.h1;
        e["h2"] = r.h2;
        e["same_field"] = r.same_field;
        e["p"] = r.p;
        arr.push_back(e);
        t << r.D1 << "," << r.D2 << "," << r.h1 << "," << r.h2 << "," << r.same_field << "," << r.p << "," << r.N
          << "," << (r.report.ell ? std::to_string(*r.report.ell) : "") << "," << r.report.margin_count << ","
          << r.report.margin_log << "," << r.report.admissible << "\n";
    }
    emit(cfg, {{"experiment", "thm2-family"}, {"rows", arr}}, t.str());
}

void run_torsor_survey(const RunConfig& cfg, int h_max, uint64_t p_max) {
    const SurveySummary s = torsor_survey(h_max, p_max, kDefaultModularBound, cfg.seed, true);
    json rows = json::array();
    std::ostringstream t;
    t << "D,p,h,split,degree,expected_degree,roots,generated,orbit,full,violations\n";
    for (const auto& c : s.rows) {
        rows.push_back({{"D", c.D},
                        {"p", c.p},
                        {"h", c.h},
                        {"split", c.split},
                        {"degree", c.degree},
                        {"expected_degree", c.expected_degree},
                        {"roots", c.roots},
                        {"generated", c.generated},
                        {"orbit", c.orbit},
                        {"full", c.full},
                        {"violations", c.violations}});
        std::string v;
        for (const auto& x : c.violations) v += (v.empty() ? "" : "; ") + x;
        t << c.D << "," << c.p << "," << c.h << "," << c.split << "," << c.degree << "," << c.expected_degree << ","
          << c.roots << "," << c.generated << "," << c.orbit << "," << c.full << "," << v << "\n";
    }
    json doc{{"experiment", "torsor-survey"},
             {"cells", s.cells},
             {"split_cells", s.split_cells},
             {"dichotomy_violations", s.dichotomy_violations},
             {"torsor_violations", s.torsor_violations},
             {"not_generated", s.not_full},
             {"rows", rows}};
    emit(cfg, doc, t.str());
}

void run_special_pipeline(const RunConfig& cfg) {
    json arr = json::array();
    std::ostringstream t;
    for (const auto& f : pipeline_fixtures()) {
        const PipelineReport r = andre_oort_pipeline(f.sigma, f.curve, f.ells, f.bound);
        json e = pipeline_json(r);
        e["fixture"] = f.name;
        e["expected"] = f.expected;
        arr.push_back(e);
        t << f.name << ":";
        for (const auto& c : r.certificate.components) t << " " << c.to_string();
        t << "\n";
    }
    emit(cfg, {{"experiment", "special-pipeline"}, {"fixtures", arr}}, t.str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Class groups, CM j-invariants, modular polynomials and reduced CM pairs"};
    app.require_subcommand(1);
    RunConfig cfg;
    app.add_option("--seed", cfg.seed, "seed for randomized root finding (default 0)");
    app.add_option("--cache-dir", cfg.cache_dir, "modular polynomial cache (overrides CM_MODPOLY_CACHE)");
    app.add_flag("--json", cfg.json, "emit one JSON document");
    app.add_option("--prime-bound", cfg.prime_bound, "prime bound for Galois image generators");
    app.add_option("--out", cfg.out, "write the output to a file");

    std::function<void()> action;
    auto sub = [&](const std::string& name, const std::string& desc) {
        CLI::App* s = app.add_subcommand(name, desc);
        s->fallthrough();
        return s;
    };

    int64_t D = 0, D1 = 0, D2 = 0, d1 = 1, d2 = 1;
    uint64_t p = 0;
    int l = 0, degree = 1, bound = 20;
    std::string j, file;
    std::vector<int> ells;

    auto* s = sub("classgroup", "class number and reduced forms");
    s->add_option("D", D)->required();
    s->callback([&] { action = [&] { cmd_classgroup(cfg, D); }; });

    s = sub("hilbert", "Hilbert class polynomial");
    s->add_option("D", D)->required();
    s->callback([&] { action = [&] { cmd_hilbert(cfg, D); }; });

    s = sub("reduce-cm", "roots of H_D mod p");
    s->add_option("D", D)->required();
    s->add_option("p", p)->required();
    s->callback([&] { action = [&] { cmd_reduce_cm(cfg, D, p); }; });

    s = sub("modpoly", "classical modular polynomial in cache format");
    s->add_option("ell", l)->required();
    s->callback([&] { action = [&] { cmd_modpoly(cfg, l); }; });

    s = sub("hecke", "roots of Phi_l(j, Y) over F_{p^k}");
    s->add_option("j", j)->required();
    s->add_option("p", p)->required();
    s->add_option("ell", l)->required();
    s->add_option("--degree", degree, "field degree k (default 1)");
    s->callback([&] { action = [&] { cmd_hecke(cfg, j, p, l, degree); }; });

    s = sub("enddisc", "discriminant of End(E) for an ordinary j");
    s->add_option("j", j)->required();
    s->add_option("p", p)->required();
    s->add_option("--degree", degree, "field degree k (default 1)");
    s->callback([&] { action = [&] { cmd_enddisc(cfg, j, p, degree); }; });

    s = sub("volcano", "horizontal l-orbit of a root of H_D mod p");
    s->add_option("D", D)->required();
    s->add_option("p", p)->required();
    s->add_option("ell", l)->required();
    s->callback([&] { action = [&] { cmd_volcano(cfg, D, p, l); }; });

    s = sub("orbit", "orbit model of a reduced CM pair");
    s->add_option("D1", D1)->required();
    s->add_option("D2", D2)->required();
    s->add_option("p", p)->required();
    s->callback([&] { action = [&] { cmd_orbit(cfg, D1, D2, p); }; });

    s = sub("thm2", "least admissible split prime for a reduced CM pair");
    s->add_option("D1", D1)->required();
    s->add_option("D2", D2)->required();
    s->add_option("p", p)->required();
    s->add_option("d1", d1)->required();
    s->add_option("d2", d2)->required();
    s->callback([&] { action = [&] { cmd_thm2(cfg, D1, D2, p, d1, d2); }; });

    s = sub("check-special", "speciality certificate for a plane curve over F_p");
    s->add_option("--poly", file, "file with lines \"i j c\"")->required();
    s->add_option("--p", p)->required();
    s->add_option("--bound", bound, "largest n searched (default 20)");
    s->add_option("--ell-list", ells, "primes for the Hecke steps")->delimiter(',');
    s->callback([&] { action = [&] { cmd_check_special(cfg, file, p, bound, ells); }; });

    int group_l = 5;
    s = sub("verify-groups", "group-theory checks");
    s->add_option("--ell", group_l, "3 or 5 (default 5)");
    s->callback([&] { action = [&] { cmd_verify_groups(cfg, group_l); }; });

    std::string name;
    int count = 4, h_min = 100, h_max = 8;
    uint64_t p_max = 200;
    s = sub("experiment", "thm2-family | torsor-survey | special-pipeline");
    s->add_option("name", name)->required()->check(CLI::IsMember({"thm2-family", "torsor-survey", "special-pipeline"}));
    s->add_option("--count", count, "thm2-family: number of discriminants (default 4)");
    s->add_option("--h-min", h_min, "thm2-family: least class number (default 100)");
    s->add_option("--h-max", h_max, "torsor-survey: largest class number (default 8)");
    s->add_option("--p-max", p_max, "torsor-survey: largest prime (default 200)");
    s->callback([&] {
        action = [&] {
            if (name == "thm2-family") {
                if (count < 2) throw UsageError("--count must be at least 2");
                run_thm2_family(cfg, count, h_min);
            } else if (name == "torsor-survey") {
                if (h_max < 1 || h_max > 8) throw UsageError("--h-max must be in 1..8");
                run_torsor_survey(cfg, h_max, p_max);
            } else {
                run_special_pipeline(cfg);
            }
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (!cfg.cache_dir.empty()) set_modpoly_cache_dir(cfg.cache_dir);
        action();
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
