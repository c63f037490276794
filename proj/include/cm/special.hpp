#pragma once

// Curves in the affine plane over F_p: fibres, components of (twisted) modular
// curves, Hecke images of curves and intersection counts.

#include <cstdint>
#include <string>
#include <vector>

#include "cm/bivar.hpp"
#include "cm/orbits.hpp"

namespace cm {

struct PlaneCurveFp {
    BivarFp poly;                     // squarefree, nonconstant
    std::vector<BivarFp> components;  // optional irreducible factors supplied by the caller

    uint32_t characteristic() const { return poly.characteristic(); }
};

// Checks squarefreeness (and that the components multiply to f up to a scalar).
PlaneCurveFp make_plane_curve(const BivarFp& f, std::vector<BivarFp> components = {});

// Z = V * H * rest: V the factors in X alone (fibres X = c), H those in Y alone.
struct FiberDecomposition {
    BivarFp V, H, rest;
};
FiberDecomposition strip_fibers(const PlaneCurveFp& Z);

// Phi_m mod p for any m whose prime factors are at most kMaxModularLevel,
// Phi_1 = X - Y. Composite levels come from Res_Z(Phi_a(X, Z), Phi_b(Z, Y)).
const BivarFp& modular_polynomial_level_mod(int m, uint32_t p);

// Res_U(Phi_l(U, X), Res_V(Phi_l(V, Y), Z(U, V))) before the squarefree part.
BivarFp hecke_image_polynomial(const BivarFp& Z, int l);
// (T_l x T_l) Z as a squarefree curve. Unsupported when l = p.
PlaneCurveFp hecke_image_curve(const PlaneCurveFp& Z, int l);

// 1 when the curves share a component, else 0.
int intersection_dimension(const PlaneCurveFp& Z1, const PlaneCurveFp& Z2);

enum class SpecialKind { FiberX, FiberY, Modular, NonSpecial };

struct ComponentVerdict {
    SpecialKind kind = SpecialKind::NonSpecial;
    BivarFp component;
    FpPoly fiber;                // FiberX / FiberY: the univariate equation
    int n = 0, m = 0, k1 = 0, k2 = 0;  // Modular: C | Phi_m(X^{p^k1}, Y^{p^k2}), n = m p^{k1+k2}
    int bound = 0;               // NonSpecial: searched n <= bound
    int witness_l = 0;           // pipeline only: l with C in Z cap (T_l x T_l) Z

    std::string to_string() const;  // "fiber(X=3)", "modular(2,0,0)", "non-special-up-to(20)"
};

struct SpecialityCertificate {
    uint32_t p = 0;
    std::vector<ComponentVerdict> components;
};

// First hit among: fibre in X, fibre in Y, then n = 1..N ascending with
// m = n / p^k prime to p and (k1, k2) in {(k, 0), (0, k)}.
ComponentVerdict is_special_component(const BivarFp& C, int N);

struct BezoutResult {
    uint64_t count = 0;  // distinct affine points over F_p-bar
    uint64_t bound = 0;  // dX(Z1) dY(Z2) + dY(Z1) dX(Z2)
};
// Precondition error when the intersection is one-dimensional; Unsupported
// when a point needs an extension beyond the supported degree.
BezoutResult bezout_check(const PlaneCurveFp& Z1, const PlaneCurveFp& Z2);

struct PipelineStep {
    int l = 0;
    bool split = false;       // split in every discriminant of the input pairs
    bool above_12d1 = false;  // l > 12 deg_X(Z')
    int dimension = -1;       // intersection_dimension(Z', (T_l x T_l) Z'); -1 if not run
};

struct PipelineReport {
    FiberDecomposition parts;
    std::vector<PipelineStep> steps;
    std::vector<int> chain;  // l's with a one-dimensional intersection, in order
    SpecialityCertificate certificate;
};

PipelineReport andre_oort_pipeline(const std::vector<CMPairSpec>& sigma, const PlaneCurveFp& Z,
                                   const std::vector<int>& ells, int N);

}  // namespace cm
