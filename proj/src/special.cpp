#include "cm/special.hpp"

#include <map>
#include <mutex>
#include <numeric>

#include "cm/embed.hpp"
#include "cm/error.hpp"
#include "cm/fp.hpp"
#include "cm/modpoly.hpp"

namespace cm {

namespace {

FpPoly as_poly_in_x(const BivarFp& f) {
    FpPoly out;
    for (const auto& row : f.rows()) out.push_back(row.empty() ? 0 : row[0]);
    fpoly::trim(out);
    return out;
}

FpPoly as_poly_in_y(const BivarFp& f) { return f.rows().empty() ? FpPoly{} : f.rows()[0]; }

BivarFp from_poly_in_x(const FpPoly& a, uint32_t p) {
    std::vector<FpPoly> rows;
    for (uint32_t c : a) rows.push_back(c ? FpPoly{c} : FpPoly{});
    return BivarFp(p, rows);
}

BivarFp from_poly_in_y(const FpPoly& a, uint32_t p) { return BivarFp(p, {a}); }

// Res_Z(A(X, Z), B(Z, Y)).
BivarFp compose(const BivarFp& A, const BivarFp& B) {
    return resultant_bivar(MPolyFp::from_bivar(A, 0, 2), MPolyFp::from_bivar(B, 2, 1), 2).to_bivar(0, 1);
}

BivarFp divide_out(BivarFp a, const BivarFp& b, int times) {
    for (int i = 0; i < times; ++i) {
        auto q = bivar::exact_div(a, b);
        require(q.has_value(), ErrorKind::Internal, "composite modular polynomial: inexact division");
        a = std::move(*q);
    }
    return a;
}

std::mutex level_mutex;

BivarFp diagonal(uint32_t p) { return BivarFp::x(p) - BivarFp::y(p); }

// Phi_{q^e} from T_{q^k} T_q = T_{q^{k+1}} + q T_{q^{k-1}} (k >= 2) and
// T_q T_q = T_{q^2} + (q + 1) T_1.
BivarFp prime_power_level(int q, int e, uint32_t p) {
    BivarFp prev = diagonal(p);
    BivarFp cur = modular_polynomial_mod(q, p);
    for (int k = 1; k < e; ++k) {
        const BivarFp prod = compose(cur, modular_polynomial_mod(q, p));
        BivarFp next = k == 1 ? divide_out(prod, prev, q + 1) : divide_out(prod, prev, q);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur.monic();
}

std::string format_fp(uint32_t c) { return std::to_string(c); }

FqElem lift_to(const FqElem& a, const FqField& from, const FqField& to) {
    if (from == to) return a;
    return SubfieldEmbedding(from, to).lift(a);
}

bool usable_for_all(int l, const std::vector<CMPairSpec>& sigma) {
    for (const auto& s : sigma)
        for (int64_t D : {s.D1r, s.D2r}) {
            const OrderSpec o = OrderSpec::from_discriminant(D);
            if (kronecker(o.dK, static_cast<uint64_t>(l)) != 1 || o.f % l == 0) return false;
        }
    return true;
}

// Distinct affine intersection points, grouped by their X-coordinate.
uint64_t count_by_x(const BivarFp& Z1, const BivarFp& Z2) {
    const uint32_t p = Z1.characteristic();
    if (!Z1.involves_y() && !Z2.involves_y()) return 0;
    const BivarFp Rb =
        resultant_bivar(MPolyFp::from_bivar(Z1, 0, 1), MPolyFp::from_bivar(Z2, 0, 1), 1).to_bivar(0, 1);
    const FpPoly R = as_poly_in_x(Rb);
    require(!R.empty(), ErrorKind::Precondition, "curves share a component");
    if (fpoly::degree(R) == 0) return 0;
    const FqField Fp = FqField::make(p, 1);
    const FqPoly rad = fqpoly::squarefree_part(fqpoly::from_fp(R, Fp), Fp);
    const auto parts = fqpoly::distinct_degree_factorization(rad, Fp);
    Rng rng(0);
    uint64_t count = 0;
    for (std::size_t d = 1; d < parts.size(); ++d) {
        if (fqpoly::degree(parts[d]) < 1) continue;
        require(static_cast<int>(d) <= kMaxExtensionDegree, ErrorKind::Unsupported,
                "intersection point of degree " + std::to_string(d) + " over F_p");
        const FqField F = FqField::make(p, static_cast<int>(d));
        FpPoly part;
        for (const auto& c : parts[d]) part.push_back(c.c[0]);
        for (const auto& x : fqpoly::distinct_roots(fqpoly::from_fp(part, F), F, rng)) {
            const FqPoly g = fqpoly::gcd(Z1.eval_x(x, F), Z2.eval_x(x, F), F);
            if (fqpoly::degree(g) >= 1) count += static_cast<uint64_t>(fqpoly::degree(fqpoly::squarefree_part(g, F)));
        }
    }
    return count;
}

}  // namespace

PlaneCurveFp make_plane_curve(const BivarFp& f, std::vector<BivarFp> components) {
    require(!f.is_constant(), ErrorKind::InvalidInput, "not a curve: constant polynomial");
    const BivarFp s = bivar::squarefree_part(f);
    require(s.deg_x() == f.deg_x() && s.deg_y() == f.deg_y(), ErrorKind::InvalidInput, "polynomial is not squarefree");
    if (!components.empty()) {
        BivarFp prod = BivarFp::constant(f.characteristic(), 1);
        for (const auto& c : components) {
            require(!c.is_constant(), ErrorKind::InvalidInput, "constant component");
            prod = prod * c;
        }
        require(prod.monic() == f.monic(), ErrorKind::InvalidInput, "components do not multiply to the curve");
    }
    return {f, std::move(components)};
}

FiberDecomposition strip_fibers(const PlaneCurveFp& Z) {
    const BivarFp& f = Z.poly;
    require(!f.is_constant(), ErrorKind::InvalidInput, "not a curve: constant polynomial");
    const uint32_t p = f.characteristic();
    FiberDecomposition d;
    d.H = from_poly_in_y(bivar::content_x(f), p);
    d.V = from_poly_in_x(bivar::content_x(f.swapped()), p);
    auto q = bivar::exact_div(f, d.V * d.H);
    require(q.has_value(), ErrorKind::Internal, "fibre parts do not divide the curve");
    d.rest = *q;
    return d;
}

const BivarFp& modular_polynomial_level_mod(int m, uint32_t p) {
    require(m >= 1, ErrorKind::InvalidInput, "level must be positive");
    require(std::gcd(static_cast<uint32_t>(m), p) == 1, ErrorKind::InvalidInput, "level must be prime to p");
    static std::map<std::pair<int, uint32_t>, BivarFp> memo;
    {
        std::lock_guard lock(level_mutex);
        auto it = memo.find({m, p});
        if (it != memo.end()) return it->second;
    }
    BivarFp result = diagonal(p);
    bool first = true;
    int rest = m;
    for (uint64_t q : prime_factors(static_cast<uint64_t>(m))) {
        require(q <= static_cast<uint64_t>(kMaxModularLevel), ErrorKind::Unsupported,
                "level " + std::to_string(m) + " needs Phi_" + std::to_string(q));
        int e = 0;
        while (rest % static_cast<int>(q) == 0) {
            rest /= static_cast<int>(q);
            ++e;
        }
        const BivarFp part = prime_power_level(static_cast<int>(q), e, p);
        result = first ? part : compose(result, part).monic();
        first = false;
    }
    std::lock_guard lock(level_mutex);
    return memo.emplace(std::pair{m, p}, result.monic()).first->second;
}

BivarFp hecke_image_polynomial(const BivarFp& Z, int l) {
    const uint32_t p = Z.characteristic();
    require(static_cast<uint32_t>(l) != p, ErrorKind::Unsupported, "Hecke image at l = p");
    const BivarFp& phi = modular_polynomial_mod(l, p);
    // Slots: 0 = U, 1 = Y, 2 = V.
    const MPolyFp r1 = resultant_bivar(MPolyFp::from_bivar(phi, 2, 1), MPolyFp::from_bivar(Z, 0, 2), 2);
    // Slots: 0 = X, 1 = Y, 2 = U.
    const MPolyFp r2 =
        resultant_bivar(MPolyFp::from_bivar(phi, 2, 0), MPolyFp::from_bivar(r1.to_bivar(0, 1), 2, 1), 2);
    return r2.to_bivar(0, 1);
}

PlaneCurveFp hecke_image_curve(const PlaneCurveFp& Z, int l) {
    return {bivar::squarefree_part(hecke_image_polynomial(Z.poly, l)), {}};
}

int intersection_dimension(const PlaneCurveFp& Z1, const PlaneCurveFp& Z2) {
    require(!Z1.poly.is_constant() && !Z2.poly.is_constant(), ErrorKind::InvalidInput, "not a curve");
    return gcd_bivar(Z1.poly, Z2.poly).is_constant() ? 0 : 1;
}

std::string ComponentVerdict::to_string() const {
    const uint32_t p = component.characteristic();
    switch (kind) {
        case SpecialKind::FiberX:
        case SpecialKind::FiberY: {
            const char v = kind == SpecialKind::FiberX ? 'X' : 'Y';
            if (fpoly::degree(fiber) == 1)
                return std::string("fiber(") + v + "=" +
                       format_fp(fp::mul(fp::neg(fiber[0], p), fp::inv(fiber[1], p), p)) + ")";
            return std::string("fiber(") + v + ": degree " + std::to_string(fpoly::degree(fiber)) + ")";
        }
        case SpecialKind::Modular:
            return "modular(" + std::to_string(n) + "," + std::to_string(k1) + "," + std::to_string(k2) + ")";
        case SpecialKind::NonSpecial: return "non-special-up-to(" + std::to_string(bound) + ")";
    }
    return "unknown";
}

ComponentVerdict is_special_component(const BivarFp& C, int N) {
    require(!C.is_constant(), ErrorKind::InvalidInput, "constant component");
    const uint32_t p = C.characteristic();
    ComponentVerdict v;
    v.component = C;
    if (!C.involves_y()) {
        v.kind = SpecialKind::FiberX;
        v.fiber = fpoly::make_monic(as_poly_in_x(C), p);
        return v;
    }
    if (!C.involves_x()) {
        v.kind = SpecialKind::FiberY;
        v.fiber = fpoly::make_monic(as_poly_in_y(C), p);
        return v;
    }
    for (int n = 1; n <= N; ++n) {
        int m = n, k = 0;
        while (m % static_cast<int>(p) == 0) {
            m /= static_cast<int>(p);
            ++k;
        }
        std::vector<std::pair<int, int>> twists{{k, 0}};
        if (k > 0) twists.push_back({0, k});
        for (const auto& [k1, k2] : twists) {
            const BivarFp target = modular_polynomial_level_mod(m, p).frobenius_twist(k1, k2);
            if (target.deg_x() < C.deg_x() || target.deg_y() < C.deg_y()) continue;
            if (bivar::divides(C, target)) {
                v.kind = SpecialKind::Modular;
                v.n = n;
                v.m = m;
                v.k1 = k1;
                v.k2 = k2;
                return v;
            }
        }
    }
    v.kind = SpecialKind::NonSpecial;
    v.bound = N;
    return v;
}

BezoutResult bezout_check(const PlaneCurveFp& Z1, const PlaneCurveFp& Z2) {
    require(intersection_dimension(Z1, Z2) == 0, ErrorKind::Precondition, "intersection is one-dimensional");
    const BivarFp& a = Z1.poly;
    const BivarFp& b = Z2.poly;
    BezoutResult r;
    r.bound = static_cast<uint64_t>(a.deg_x()) * b.deg_y() + static_cast<uint64_t>(a.deg_y()) * b.deg_x();
    try {
        r.count = count_by_x(a, b);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::Unsupported) throw;
        r.count = count_by_x(a.swapped(), b.swapped());
    }
    require(r.count <= r.bound, ErrorKind::Internal, "intersection count exceeds the Bezout bound");
    return r;
}

PipelineReport andre_oort_pipeline(const std::vector<CMPairSpec>& sigma, const PlaneCurveFp& Z,
                                   const std::vector<int>& ells, int N) {
    const uint32_t p = Z.characteristic();
    for (const auto& s : sigma) {
        require(s.p == p, ErrorKind::InvalidInput, "CM pair over a different prime");
        const int e = std::lcm(s.field1.degree(), s.field2.degree());
        require(e <= kMaxExtensionDegree, ErrorKind::Unsupported, "CM pair needs too large a field");
        const FqField F = FqField::make(p, e);
        const FqElem x = lift_to(s.x1, s.field1, F), y = lift_to(s.x2, s.field2, F);
        require(F.is_zero(Z.poly.eval(x, y, F)), ErrorKind::Precondition, "CM pair does not lie on the curve");
    }

    PipelineReport rep;
    rep.certificate.p = p;
    rep.parts = strip_fibers(Z);
    for (const BivarFp* part : {&rep.parts.V, &rep.parts.H}) {
        if (part->is_constant()) continue;
        const FqField Fp = FqField::make(p, 1);
        const bool in_x = part == &rep.parts.V;
        const FpPoly u = in_x ? as_poly_in_x(*part) : as_poly_in_y(*part);
        Rng rng(0);
        FqPoly rem_poly = fqpoly::make_monic(fqpoly::from_fp(u, Fp), Fp);
        for (const auto& c : fqpoly::distinct_roots(rem_poly, Fp, rng)) {
            const FpPoly lin{fp::neg(c.c[0], p), 1};
            rem_poly = fqpoly::quo(rem_poly, fqpoly::from_fp(lin, Fp), Fp);
            rep.certificate.components.push_back(
                is_special_component(in_x ? from_poly_in_x(lin, p) : from_poly_in_y(lin, p), N));
        }
        if (fqpoly::degree(rem_poly) >= 1) {
            FpPoly r;
            for (const auto& c : rem_poly) r.push_back(c.c[0]);
            rep.certificate.components.push_back(is_special_component(in_x ? from_poly_in_x(r, p) : from_poly_in_y(r, p), N));
        }
    }
    if (rep.parts.rest.is_constant()) return rep;

    const PlaneCurveFp Zr{rep.parts.rest, {}};
    std::vector<BivarFp> comps;
    for (const auto& c : Z.components)
        if (c.involves_x() && c.involves_y()) comps.push_back(c);
    if (comps.empty()) comps.push_back(rep.parts.rest);
    std::vector<int> witness(comps.size(), 0);
    const int d1 = Zr.poly.deg_x();

    for (int l : ells) {
        if (static_cast<uint32_t>(l) == p || !is_prime(static_cast<uint64_t>(l))) continue;
        if (std::all_of(witness.begin(), witness.end(), [](int w) { return w != 0; })) break;
        PipelineStep step;
        step.l = l;
        step.split = usable_for_all(l, sigma);
        step.above_12d1 = l > 12 * d1;
        if (step.split) {
            const PlaneCurveFp T = hecke_image_curve(Zr, l);
            const BivarFp g = gcd_bivar(Zr.poly, T.poly);
            step.dimension = g.is_constant() ? 0 : 1;
            if (step.dimension == 1) {
                rep.chain.push_back(l);
                for (std::size_t i = 0; i < comps.size(); ++i)
                    if (witness[i] == 0 && bivar::divides(comps[i], g)) witness[i] = l;
            }
        }
        rep.steps.push_back(step);
    }
    for (std::size_t i = 0; i < comps.size(); ++i) {
        ComponentVerdict v = is_special_component(comps[i], N);
        v.witness_l = witness[i];
        rep.certificate.components.push_back(std::move(v));
    }
    return rep;
}

}  // namespace cm
