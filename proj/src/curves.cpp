#include "cm/curves.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <set>

#include "cm/classpoly.hpp"
#include "cm/embed.hpp"
#include "cm/error.hpp"
#include "cm/kernels.hpp"
#include "cm/qforms.hpp"

namespace cm {

namespace {

void require_curve_characteristic(const FqField& F) {
    require(F.characteristic() >= 5, ErrorKind::Unsupported, "curve arithmetic needs characteristic >= 5");
}

std::mutex chi_mutex;

// Quadratic character of F_p, padded for the gather kernel.
std::shared_ptr<const std::vector<int8_t>> prime_chi(uint32_t p) {
    static std::map<uint32_t, std::shared_ptr<const std::vector<int8_t>>> tables;
    std::lock_guard lock(chi_mutex);
    auto it = tables.find(p);
    if (it != tables.end()) return it->second;
    auto t = std::make_shared<std::vector<int8_t>>(p + 3, -1);
    (*t)[0] = 0;
    for (uint32_t x = 1; x <= p / 2; ++x) (*t)[fp::mul(x, x, p)] = 1;
    for (uint32_t k = p; k < p + 3; ++k) (*t)[k] = 0;
    tables.emplace(p, t);
    return t;
}

struct Standard {
    FqField field;
    FqElem value;
};

// j viewed in the standard model of its smallest field.
Standard descend_to_minimal(const FqElem& j, const FqField& F) {
    const int m = minimal_subfield_degree(j, F);
    FqField S = FqField::make(F.characteristic(), m);
    if (m == F.degree() && S == F) return {F, j};
    const auto d = SubfieldEmbedding(S, F).descend(j);
    require(d.has_value(), ErrorKind::Internal, "descent to the minimal subfield failed");
    return {S, *d};
}

int rational_root_multiplicity(const FqElem& x, const FqField& F, int r, Rng& rng) {
    int n = 0;
    for (const auto& rm : fqpoly::roots_with_multiplicity(modular_polynomial_at(x, r, F), F, rng)) n += rm.multiplicity;
    return n;
}

}  // namespace

FqElem EllipticCurve::discriminant() const {
    const FqField& F = field;
    const FqElem a43 = F.mul(F.sqr(a4), a4);
    const FqElem s = F.add(F.mul_scalar(a43, 4), F.mul_scalar(F.sqr(a6), 27));
    return F.neg(F.mul_scalar(s, 16));
}

FqElem EllipticCurve::j_invariant() const {
    const FqField& F = field;
    const FqElem a43 = F.mul_scalar(F.mul(F.sqr(a4), a4), 4);
    const FqElem den = F.add(a43, F.mul_scalar(F.sqr(a6), 27));
    require(!F.is_zero(den), ErrorKind::InvalidInput, "singular curve");
    return F.mul_scalar(F.div(a43, den), 1728 % F.characteristic());
}

EllipticCurve curve_from_j(const FqElem& j, const FqField& F) {
    require_curve_characteristic(F);
    const FqElem c1728 = F.from_int(1728);
    if (F.is_zero(j)) return {F, F.zero(), F.one()};
    if (j == c1728) return {F, F.one(), F.zero()};
    const FqElem k = F.div(j, F.sub(c1728, j));
    return {F, F.mul_scalar(k, 3), F.mul_scalar(k, 2)};
}

PointCount point_count(const EllipticCurve& E, uint64_t bound) {
    const FqField& F = E.field;
    require_curve_characteristic(F);
    require(!F.is_zero(E.discriminant()), ErrorKind::InvalidInput, "singular curve");
    const uint64_t q = F.order_u64();
    require(q != 0 && q <= bound, ErrorKind::Unsupported, "field too large for point counting");
    int64_t sum = 0;
    if (F.degree() == 1) {
        const uint32_t p = F.characteristic();
        const auto chi = prime_chi(p);
        sum = kernels::cubic_character_sum(E.a4.c[0], E.a6.c[0], p, *chi);
    } else {
        std::vector<int8_t> chi(q, -1);
        chi[0] = 0;
        for (uint64_t i = 1; i < q; ++i) chi[F.index_of(F.sqr(F.element_at(i)))] = 1;
        for (uint64_t i = 0; i < q; ++i) {
            const FqElem x = F.element_at(i);
            const FqElem y2 = F.add(F.mul(F.add(F.sqr(x), E.a4), x), E.a6);
            sum += chi[F.index_of(y2)];
        }
    }
    const int64_t count = static_cast<int64_t>(q) + 1 + sum;
    return {static_cast<uint64_t>(count), static_cast<int64_t>(q) + 1 - count};
}

bool is_supersingular(const FqElem& j, const FqField& F, uint64_t bound) {
    require_curve_characteristic(F);
    const Standard s = descend_to_minimal(j, F);
    if (s.field.degree() > 2) return false;
    const PointCount pc = point_count(curve_from_j(s.value, s.field), bound);
    return pc.trace % static_cast<int64_t>(F.characteristic()) == 0;
}

FrobeniusData frobenius_data(const EllipticCurve& E, uint64_t bound) {
    const PointCount pc = point_count(E, bound);
    FrobeniusData d;
    d.q = E.field.order_u64();
    d.trace = pc.trace;
    require(pc.trace % static_cast<int64_t>(E.field.characteristic()) != 0, ErrorKind::Precondition,
            "curve is supersingular");
    d.disc = pc.trace * pc.trace - 4 * static_cast<int64_t>(d.q);
    const OrderSpec o = OrderSpec::from_discriminant(d.disc);
    d.v = o.f;
    d.dK = o.dK;
    return d;
}

int volcano_depth(const FqElem& j, const FqField& F, int r, int h) {
    if (h == 0) return 0;
    Rng rng(0);
    auto on_floor = [&](const FqElem& x) { return rational_root_multiplicity(x, F, r, rng) < r + 1; };
    if (on_floor(j)) return h;
    struct Walk {
        FqElem prev, cur;
    };
    std::vector<Walk> walks;
    for (const auto& y : fqpoly::distinct_roots(modular_polynomial_at(j, r, F), F, rng)) {
        walks.push_back({j, y});
        if (walks.size() == 3) break;
    }
    // A non-backtracking walk that starts downward stays downward, so the
    // shortest of the walks reaches the floor in h - depth steps.
    // A walk that can only backtrack (all edges out of j = 0 or 1728 lead to
    // prev) went upward and is dropped.
    for (int steps = 1; steps <= h; ++steps) {
        for (const auto& w : walks)
            if (on_floor(w.cur)) return h - steps;
        std::vector<Walk> alive;
        for (const auto& w : walks) {
            const auto next = fqpoly::distinct_roots(modular_polynomial_at(w.cur, r, F), F, rng);
            auto it = std::find_if(next.begin(), next.end(), [&](const FqElem& y) { return y != w.prev; });
            if (it != next.end()) alive.push_back({w.cur, *it});
        }
        require(!alive.empty(), ErrorKind::Internal, "volcano walks stuck");
        walks = std::move(alive);
    }
    fail(ErrorKind::Internal, "volcano walk did not reach the floor");
}

int64_t endomorphism_discriminant(const FqElem& j, const FqField& F, int modpoly_bound, uint64_t count_bound) {
    require_curve_characteristic(F);
    const Standard s = descend_to_minimal(j, F);
    const uint64_t q = s.field.order_u64();
    require(q <= count_bound, ErrorKind::Unsupported, "field of definition too large for point counting");
    const FrobeniusData d = frobenius_data(curve_from_j(s.value, s.field), count_bound);
    if (s.field.is_zero(s.value)) return -3;
    if (s.value == s.field.from_int(1728)) return -4;
    int64_t f = 1;
    for (uint64_t r : prime_factors(static_cast<uint64_t>(d.v))) {
        require(static_cast<int64_t>(r) <= modpoly_bound && static_cast<int>(r) <= kMaxModularLevel,
                ErrorKind::Unsupported, "volcano probing needs Phi_" + std::to_string(r));
        int h = 0;
        for (int64_t v = d.v; v % static_cast<int64_t>(r) == 0; v /= static_cast<int64_t>(r)) ++h;
        const int depth = volcano_depth(s.value, s.field, static_cast<int>(r), h);
        for (int i = 0; i < depth; ++i) f *= static_cast<int64_t>(r);
    }
    return d.dK * f * f;
}

std::vector<FqElem> horizontal_isogeny_step(const FqElem& j, int64_t D, int l, const FqField& F, Rng& rng) {
    const OrderSpec o = OrderSpec::from_discriminant(D);
    const uint32_t p = F.characteristic();
    require(static_cast<uint32_t>(l) != p, ErrorKind::Precondition, "isogeny degree equals the characteristic");
    require(kronecker(D, static_cast<uint64_t>(l)) == 1 && o.f % l != 0, ErrorKind::Precondition,
            std::to_string(l) + " is not split in the order of discriminant " + std::to_string(D));
    require(kronecker(o.dK, p) == 1 && o.f % p != 0, ErrorKind::Precondition,
            "reduction of discriminant " + std::to_string(D) + " mod " + std::to_string(p) + " is not ordinary");
    const FqPoly H = fqpoly::from_fp(hilbert_class_polynomial(D).reduce(p), F);
    require(F.is_zero(fqpoly::eval(H, j, F)), ErrorKind::Precondition,
            "j is not a root of H_" + std::to_string(D) + " mod " + std::to_string(p));
    const FqPoly g = fqpoly::gcd(modular_polynomial_at(j, l, F), H, F);
    auto roots = fqpoly::distinct_roots(g, F, rng);
    require(static_cast<int>(roots.size()) == fqpoly::degree(fqpoly::squarefree_part(g, F)), ErrorKind::Precondition,
            "horizontal neighbours are not defined over the given field");
    return roots;
}

std::vector<FqElem> horizontal_orbit(const FqElem& j, int64_t D, const std::vector<int>& primes, const FqField& F,
                                     Rng& rng) {
    std::set<FqElem> seen{j};
    std::vector<FqElem> frontier{j};
    while (!frontier.empty()) {
        std::vector<FqElem> next;
        for (const auto& x : frontier)
            for (int l : primes)
                for (const auto& y : horizontal_isogeny_step(x, D, l, F, rng))
                    if (seen.insert(y).second) next.push_back(y);
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

}  // namespace cm
