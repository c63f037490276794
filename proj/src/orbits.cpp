#include "cm/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "cm/classpoly.hpp"
#include "cm/curves.hpp"
#include "cm/error.hpp"
#include "cm/fp.hpp"

namespace cm {

namespace {

bool usable_prime(uint64_t l, const OrderSpec& o1, const OrderSpec& o2) {
    return kronecker(o1.dK, l) == 1 && kronecker(o2.dK, l) == 1 && o1.f % static_cast<int64_t>(l) != 0 &&
           o2.f % static_cast<int64_t>(l) != 0;
}

// Subgroup closure in Pic1 x Pic2, pairs encoded as a * h2 + b.
class SubgroupBuilder {
public:
    SubgroupBuilder(const ClassGroup& G1, const ClassGroup& G2)
        : G1_(G1), G2_(G2), member_(static_cast<std::size_t>(G1.size()) * G2.size(), false) {
        member_[0] = true;
        elems_.push_back({0, 0});
    }

    // Returns true when g was not already in the subgroup.
    bool add(std::pair<int, int> g) {
        if (member_[code(g)]) return false;
        gens_.push_back(g);
        for (std::size_t i = 0; i < elems_.size(); ++i)
            for (const auto& h : gens_) {
                const std::pair<int, int> x{G1_.mul(elems_[i].first, h.first), G2_.mul(elems_[i].second, h.second)};
                if (!member_[code(x)]) {
                    member_[code(x)] = true;
                    elems_.push_back(x);
                }
            }
        return true;
    }

    std::size_t size() const { return elems_.size(); }
    const std::vector<std::pair<int, int>>& generators() const { return gens_; }
    std::vector<std::pair<int, int>> elements() const {
        auto e = elems_;
        std::sort(e.begin(), e.end());
        return e;
    }
    // Sizes of the two projections.
    std::pair<int, int> projections() const {
        std::set<int> a, b;
        for (const auto& e : elems_) {
            a.insert(e.first);
            b.insert(e.second);
        }
        return {static_cast<int>(a.size()), static_cast<int>(b.size())};
    }
    bool complete() const {
        const auto [a, b] = projections();
        return a * projection_index(G1_.discriminant(), G2_.order().dK) == G1_.size() &&
               b * projection_index(G2_.discriminant(), G1_.order().dK) == G2_.size();
    }

private:
    std::size_t code(std::pair<int, int> x) const {
        return static_cast<std::size_t>(x.first) * G2_.size() + x.second;
    }
    const ClassGroup& G1_;
    const ClassGroup& G2_;
    std::vector<bool> member_;
    std::vector<std::pair<int, int>> elems_, gens_;
};

std::vector<std::pair<int, int>> frobenius_pairs(uint64_t l, const ClassGroup& G1, const ClassGroup& G2,
                                                 bool same_field) {
    const int a = G1.index_of(field_prime_class(l, G1.discriminant()));
    const int b = G2.index_of(field_prime_class(l, G2.discriminant()));
    if (same_field) return {{a, b}};
    return {{a, b}, {a, G2.inverse(b)}};
}

GaloisImage finish(int64_t D1, int64_t D2, std::shared_ptr<const ClassGroup> G1, std::shared_ptr<const ClassGroup> G2,
                   bool same, uint64_t bound, std::vector<uint64_t> primes, const SubgroupBuilder& sb) {
    GaloisImage g;
    g.D1 = D1;
    g.D2 = D2;
    g.G1 = std::move(G1);
    g.G2 = std::move(G2);
    g.same_field = same;
    g.bound = bound;
    g.primes = std::move(primes);
    g.generators = sb.generators();
    g.elements = sb.elements();
    return g;
}

}  // namespace

QuadForm field_prime_class(uint64_t l, int64_t D) {
    const OrderSpec o = OrderSpec::from_discriminant(D);
    require(kronecker(D, l) == 1, ErrorKind::Precondition, std::to_string(l) + " is not split");
    const int64_t L = static_cast<int64_t>(l);
    const int64_t b = (o.f % (2 * L)) * prime_form_b(l, o.dK) % (2 * L);
    return reduce_form({L, b, (b * b - D) / (4 * L)});
}

bool GaloisImage::contains(int a, int b) const { return std::binary_search(elements.begin(), elements.end(), std::pair{a, b}); }

int projection_index(int64_t D, int64_t d_other) {
    if (OrderSpec::from_discriminant(D).dK == d_other || D % d_other != 0) return 1;
    const int64_t q = D / d_other;
    return q % 4 == 0 || q % 4 == 1 ? 2 : 1;
}

bool GaloisImage::complete() const {
    std::set<int> a, b;
    for (const auto& e : elements) {
        a.insert(e.first);
        b.insert(e.second);
    }
    return static_cast<int>(a.size()) * projection_index(D1, G2->order().dK) == G1->size() &&
           static_cast<int>(b.size()) * projection_index(D2, G1->order().dK) == G2->size();
}

bool GaloisImage::surjective() const {
    std::set<int> a, b;
    for (const auto& e : elements) {
        a.insert(e.first);
        b.insert(e.second);
    }
    return static_cast<int>(a.size()) == G1->size() && static_cast<int>(b.size()) == G2->size();
}

GaloisImage galois_image(int64_t D1, int64_t D2, uint64_t B) {
    require(D1 < 0 && D2 < 0 && is_discriminant(D1) && is_discriminant(D2), ErrorKind::InvalidInput,
            "negative discriminants required");
    auto G1 = std::make_shared<const ClassGroup>(D1);
    auto G2 = std::make_shared<const ClassGroup>(D2);
    const bool same = G1->order().dK == G2->order().dK;
    SubgroupBuilder sb(*G1, *G2);
    std::vector<uint64_t> primes;
    for (uint64_t l = 2; l <= B; ++l) {
        if (!is_prime(l) || !usable_prime(l, G1->order(), G2->order())) continue;
        bool grew = false;
        for (const auto& g : frobenius_pairs(l, *G1, *G2, same)) grew |= sb.add(g);
        if (grew) primes.push_back(l);
    }
    require(sb.complete(), ErrorKind::InsufficientBound,
            "Frobenius pairs up to " + std::to_string(B) + " do not fill the expected projections");
    return finish(D1, D2, G1, G2, same, B, primes, sb);
}

GaloisImage galois_image_auto(int64_t D1, int64_t D2, uint64_t start, int window) {
    require(D1 < 0 && D2 < 0 && is_discriminant(D1) && is_discriminant(D2), ErrorKind::InvalidInput,
            "negative discriminants required");
    auto G1 = std::make_shared<const ClassGroup>(D1);
    auto G2 = std::make_shared<const ClassGroup>(D2);
    const bool same = G1->order().dK == G2->order().dK;
    SubgroupBuilder sb(*G1, *G2);
    std::vector<uint64_t> primes;
    int stable = 0;
    uint64_t l = 1;
    const uint64_t limit = 10000000;
    while (true) {
        ++l;
        require(l <= limit, ErrorKind::InsufficientBound, "Galois image did not stabilize");
        if (!is_prime(l) || !usable_prime(l, G1->order(), G2->order())) continue;
        bool grew = false;
        for (const auto& g : frobenius_pairs(l, *G1, *G2, same)) grew |= sb.add(g);
        if (grew) {
            primes.push_back(l);
            stable = 0;
        } else if (sb.complete()) {
            ++stable;
        }
        if (l >= start && sb.complete() && stable >= window) break;
    }
    return finish(D1, D2, G1, G2, same, l, primes, sb);
}

CMPairSpec make_cm_pair(int64_t D1, int64_t D2, uint64_t p, std::size_t i1, std::size_t i2) {
    const ReducedJSet r1 = reduced_j_set(D1, p);
    const ReducedJSet r2 = reduced_j_set(D2, p);
    require(r1.kind == ReductionKind::Ordinary && r2.kind == ReductionKind::Ordinary, ErrorKind::Precondition,
            "both reductions mod " + std::to_string(p) + " must be ordinary");
    require(i1 < r1.roots.size() && i2 < r2.roots.size(), ErrorKind::InvalidInput, "base point index out of range");
    CMPairSpec s;
    s.D1 = D1;
    s.D2 = D2;
    s.p = static_cast<uint32_t>(p);
    s.D1r = r1.D_reduced;
    s.D2r = r2.D_reduced;
    s.field1 = r1.field;
    s.field2 = r2.field;
    s.roots1 = r1.roots;
    s.roots2 = r2.roots;
    s.x1 = r1.roots[i1];
    s.x2 = r2.roots[i2];
    return s;
}

std::vector<FqElem> torsor_labeling(const FqElem& x, const ClassGroup& G, const FqField& F, Rng& rng,
                                    int modpoly_bound) {
    const int64_t D = G.discriminant();
    const uint32_t p = F.characteristic();
    const int h = G.size();
    const OrderSpec& o = G.order();

    struct Gen {
        int l;
        int cls;
    };
    std::vector<Gen> gens;
    std::set<int> reached{0};
    for (int l = 2; l <= std::min(modpoly_bound, kMaxModularLevel); ++l) {
        if (!is_prime(l) || static_cast<uint32_t>(l) == p || kronecker(D, l) != 1 || o.f % l == 0) continue;
        const int c = G.index_of(field_prime_class(l, D));
        gens.push_back({l, c});
        for (bool grown = true; grown;) {
            grown = false;
            for (int a : std::set<int>(reached))
                if (reached.insert(G.mul(a, c)).second) grown = true;
        }
    }
    require(static_cast<int>(reached.size()) == h, ErrorKind::Unsupported,
            "split primes up to " + std::to_string(modpoly_bound) + " do not generate Pic(" + std::to_string(D) + ")");

    // Vertices are the roots reachable from x; edges[k][v] = l_k-neighbours.
    std::vector<FqElem> verts{x};
    std::map<FqElem, int> vid{{x, 0}};
    std::vector<std::vector<std::vector<int>>> edges(gens.size());
    for (std::size_t v = 0; v < verts.size(); ++v)
        for (std::size_t k = 0; k < gens.size(); ++k) {
            std::vector<int> nb;
            for (const auto& y : horizontal_isogeny_step(verts[v], D, gens[k].l, F, rng)) {
                auto [it, fresh] = vid.emplace(y, static_cast<int>(verts.size()));
                if (fresh) verts.push_back(y);
                nb.push_back(it->second);
            }
            edges[k].resize(std::max(edges[k].size(), v + 1));
            edges[k][v] = std::move(nb);
        }
    require(static_cast<int>(verts.size()) == h, ErrorKind::Internal, "horizontal orbit size differs from h(D)");
    for (auto& e : edges) e.resize(h);

    // Spanning tree over the class group in BFS order.
    std::vector<int> order{0}, parent(h, -1), via(h, -1);
    std::vector<bool> seen(h, false);
    seen[0] = true;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t k = 0; k < gens.size(); ++k)
            for (int c : {G.mul(order[i], gens[k].cls), G.mul(order[i], G.inverse(gens[k].cls))})
                if (!seen[c]) {
                    seen[c] = true;
                    parent[c] = order[i];
                    via[c] = static_cast<int>(k);
                    order.push_back(c);
                }

    std::vector<int> label(h, -1);
    std::vector<bool> used(h, false);
    auto adjacent = [&](std::size_t k, int u, int v) {
        return std::find(edges[k][u].begin(), edges[k][u].end(), v) != edges[k][u].end();
    };
    auto consistent = [&](int c) {
        for (std::size_t k = 0; k < gens.size(); ++k)
            for (int d : {G.mul(c, gens[k].cls), G.mul(c, G.inverse(gens[k].cls))})
                if (label[d] >= 0 && !adjacent(k, label[c], label[d])) return false;
        return true;
    };
    std::function<bool(std::size_t)> assign = [&](std::size_t i) {
        if (i == order.size()) return true;
        const int c = order[i];
        for (int v : edges[via[c]][label[parent[c]]]) {
            if (used[v]) continue;
            label[c] = v;
            used[v] = true;
            if (consistent(c) && assign(i + 1)) return true;
            used[v] = false;
            label[c] = -1;
        }
        return false;
    };
    label[0] = 0;
    used[0] = true;
    require(assign(1), ErrorKind::Internal, "no labeling of the horizontal graph by Pic(D)");
    std::vector<FqElem> out(h);
    for (int c = 0; c < h; ++c) out[c] = verts[label[c]];
    return out;
}

std::size_t OrbitModel::size() const {
    std::size_t n = 0;
    for (const auto& s : suborbits) n += s.size();
    return n;
}

std::vector<std::pair<FqElem, FqElem>> OrbitModel::points() const {
    std::vector<std::pair<FqElem, FqElem>> out;
    for (const auto& s : suborbits)
        for (const auto& [a, b] : s) out.emplace_back(label1[a], label2[b]);
    return out;
}

OrbitModel orbit_model(const CMPairSpec& spec, const GaloisImage& gamma, int modpoly_bound) {
    require(gamma.D1 == spec.D1r && gamma.D2 == spec.D2r, ErrorKind::InvalidInput,
            "Galois image must be taken over the reduced discriminants");
    require(gamma.complete(), ErrorKind::Precondition, "Galois image is incomplete");
    OrbitModel m;
    m.spec = spec;
    m.gamma = gamma;
    const ClassGroup& G1 = *gamma.G1;
    const ClassGroup& G2 = *gamma.G2;
    Rng rng(0);
    m.label1 = torsor_labeling(spec.x1, G1, spec.field1, rng, modpoly_bound);
    if (spec.D1r == spec.D2r && spec.field1 == spec.field2) {
        // Same torsor: label the second coordinate through the first.
        const auto it = std::find(m.label1.begin(), m.label1.end(), spec.x2);
        require(it != m.label1.end(), ErrorKind::Internal, "base point outside the torsor");
        const int b0 = static_cast<int>(it - m.label1.begin());
        m.label2.resize(G2.size());
        for (int c = 0; c < G2.size(); ++c) m.label2[c] = m.label1[G1.mul(c, b0)];
    } else {
        m.label2 = torsor_labeling(spec.x2, G2, spec.field2, rng, modpoly_bound);
    }

    // Images of the Gamma-orbit of the base point under coordinatewise class
    // inversion, split into Gamma-orbits.
    std::vector<std::pair<bool, bool>> flips = {{false, false}, {true, true}};
    if (!gamma.same_field) {
        flips.push_back({true, false});
        flips.push_back({false, true});
    }
    std::set<std::pair<int, int>> covered;
    for (const auto& [f1, f2] : flips)
        for (const auto& [a, b] : gamma.elements) {
            const std::pair<int, int> u{f1 ? G1.inverse(a) : a, f2 ? G2.inverse(b) : b};
            if (covered.count(u)) continue;
            std::vector<std::pair<int, int>> orbit;
            for (const auto& [c, d] : gamma.elements) {
                const std::pair<int, int> w{G1.mul(u.first, c), G2.mul(u.second, d)};
                covered.insert(w);
                orbit.push_back(w);
            }
            std::sort(orbit.begin(), orbit.end());
            m.suborbits.push_back(std::move(orbit));
        }
    require(m.suborbits.size() <= 4, ErrorKind::Internal, "more than four suborbits");
    return m;
}

Thm2Report thm2_search(uint64_t N, int64_t D1, int64_t D2, uint64_t p, int64_t d1, int64_t d2) {
    require(N >= 1 && d1 >= 1 && d2 >= 1, ErrorKind::InvalidInput, "N, d1, d2 must be positive");
    const OrderSpec o1 = OrderSpec::from_discriminant(D1);
    const OrderSpec o2 = OrderSpec::from_discriminant(D2);
    Thm2Report r;
    r.N = N;
    r.d1 = d1;
    r.d2 = d2;
    const double logN = std::log(static_cast<double>(N));
    const double scale = 2.0 * static_cast<double>(d1) * static_cast<double>(d2);
    for (uint64_t l = 2;; ++l) {
        const double bound = scale * static_cast<double>(l + 1) * static_cast<double>(l + 1);
        if (bound >= static_cast<double>(N)) break;
        if (static_cast<double>(l) <= logN || l == p || !is_prime(l) || !usable_prime(l, o1, o2)) continue;
        r.ell = l;
        r.margin_count = static_cast<double>(N) - bound;
        r.margin_log = static_cast<double>(l) - logN;
        r.admissible = true;
        break;
    }
    return r;
}

Thm2Report thm2_search(const OrbitModel& model, int64_t d1, int64_t d2) {
    return thm2_search(model.size(), model.spec.D1r, model.spec.D2r, model.spec.p, d1, d2);
}

bool verify_frobenius_lifting(const OrbitModel& model, int l) {
    const uint32_t p = model.spec.p;
    require(static_cast<uint32_t>(l) != p, ErrorKind::Precondition, "l equals the characteristic");
    const BivarFp& phi = modular_polynomial_mod(l, p);
    auto adjacency = [&](const std::vector<FqElem>& lab, const FqField& F) {
        std::vector<std::vector<bool>> a(lab.size(), std::vector<bool>(lab.size()));
        for (std::size_t i = 0; i < lab.size(); ++i)
            for (std::size_t j = 0; j < lab.size(); ++j) a[i][j] = F.is_zero(phi.eval(lab[i], lab[j], F));
        return a;
    };
    const auto A1 = adjacency(model.label1, model.spec.field1);
    const auto A2 = adjacency(model.label2, model.spec.field2);
    std::vector<std::pair<int, int>> all;
    for (const auto& s : model.suborbits) all.insert(all.end(), s.begin(), s.end());
    for (const auto& [a, b] : all) {
        bool found = false;
        for (const auto& [c, d] : all)
            if (A1[c][a] && A2[d][b]) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

}  // namespace cm
