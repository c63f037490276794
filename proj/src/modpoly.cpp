#include "cm/modpoly.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <sstream>

#include <unistd.h>

#include "cm/error.hpp"

namespace cm {

namespace {

// Arithmetic modulo the Mersenne prime 2^61 - 1, used to validate Phi_l.
struct ModP {
    static constexpr uint64_t P = (uint64_t{1} << 61) - 1;
    uint64_t v = 0;
    ModP() = default;
    explicit ModP(uint64_t x) : v(x % P) {}
    static ModP from(const BigInt& x) {
        BigInt r = x % BigInt(std::to_string(P));
        if (r < 0) r += BigInt(std::to_string(P));
        return ModP(std::stoull(r.get_str()));
    }
    ModP operator+(ModP o) const { return ModP(v + o.v >= P ? v + o.v - P : v + o.v, 0); }
    ModP operator-(ModP o) const { return ModP(v >= o.v ? v - o.v : v + P - o.v, 0); }
    ModP operator*(ModP o) const {
        const unsigned __int128 t = static_cast<unsigned __int128>(v) * o.v;
        uint64_t r = static_cast<uint64_t>(t & P) + static_cast<uint64_t>(t >> 61);
        if (r >= P) r -= P;
        return ModP(r, 0);
    }
    bool operator==(const ModP&) const = default;
    bool is_zero() const { return v == 0; }

private:
    ModP(uint64_t x, int) : v(x) {}
};

bool is_zero(const BigInt& x) { return x == 0; }
bool is_zero(const ModP& x) { return x.is_zero(); }

// Truncated Laurent series: c[i] is the coefficient of q^(val + i), known for
// all exponents below prec (val + c.size() == prec).
template <class T>
struct Series {
    int val = 0;
    int prec = 0;
    std::vector<T> c;

    T at(int e) const {
        require(e < prec, ErrorKind::Internal, "series coefficient beyond precision");
        return e < val ? T{} : c[e - val];
    }
    void normalize() {
        std::size_t k = 0;
        while (k < c.size() && is_zero(c[k])) ++k;
        c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(k));
        val += static_cast<int>(k);
    }
};

template <class T>
Series<T> mul(const Series<T>& a, const Series<T>& b) {
    Series<T> r;
    r.val = a.val + b.val;
    r.prec = std::min(a.val + b.prec, b.val + a.prec);
    const int n = std::max(0, r.prec - r.val);
    r.c.assign(n, T{});
    for (int i = 0; i < static_cast<int>(a.c.size()) && i < n; ++i) {
        if (is_zero(a.c[i])) continue;
        const int jmax = std::min(static_cast<int>(b.c.size()), n - i);
        for (int j = 0; j < jmax; ++j) {
            if constexpr (std::is_same_v<T, BigInt>)
                mpz_addmul(r.c[i + j].get_mpz_t(), a.c[i].get_mpz_t(), b.c[j].get_mpz_t());
            else
                r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
        }
    }
    r.normalize();
    return r;
}

template <class T>
Series<T> add(const Series<T>& a, const Series<T>& b, bool subtract = false) {
    Series<T> r;
    r.val = std::min(a.val, b.val);
    r.prec = std::min(a.prec, b.prec);
    const int n = std::max(0, r.prec - r.val);
    r.c.assign(n, T{});
    for (int k = 0; k < n; ++k) {
        const int e = r.val + k;
        const T x = e >= a.val ? a.c[e - a.val] : T{};
        const T y = e >= b.val ? b.c[e - b.val] : T{};
        if (subtract)
            r.c[k] = x - y;
        else
            r.c[k] = x + y;
    }
    r.normalize();
    return r;
}

template <class T>
Series<T> scaled(const Series<T>& a, const T& s) {
    Series<T> r = a;
    for (auto& x : r.c) x = x * s;
    r.normalize();
    return r;
}

// f(q^k) from f(q)
template <class T>
Series<T> stretch(const Series<T>& a, int k) {
    Series<T> r;
    r.val = a.val * k;
    r.prec = a.prec * k;
    r.c.assign(r.prec - r.val, T{});
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i * k] = a.c[i];
    return r;
}

template <class T>
Series<T> j_series(const std::vector<BigInt>& coeffs) {
    Series<T> s;
    s.val = -1;
    s.prec = static_cast<int>(coeffs.size()) - 1;
    for (const auto& x : coeffs) {
        if constexpr (std::is_same_v<T, BigInt>)
            s.c.push_back(x);
        else
            s.c.push_back(ModP::from(x));
    }
    return s;
}

bool prime_level(int l) { return l >= 2 && is_prime(static_cast<uint64_t>(l)); }

std::shared_mutex memo_mutex;
std::map<int, BivarIntPoly>& memo() {
    static std::map<int, BivarIntPoly> m;
    return m;
}
std::map<std::pair<int, uint32_t>, BivarFp>& memo_mod() {
    static std::map<std::pair<int, uint32_t>, BivarFp> m;
    return m;
}

std::mutex dir_mutex;
bool dir_initialized = false;
std::filesystem::path cache_dir;

}  // namespace

std::vector<BigInt> j_coefficients(int n) {
    require(n >= 1, ErrorKind::InvalidInput, "need at least one coefficient");
    // E4 = 1 + 240 sum sigma_3(k) q^k; Delta / q = prod (1 - q^k)^24.
    std::vector<BigInt> e4(n, 0), eta(n, 0);
    e4[0] = 1;
    for (int d = 1; d < n; ++d)
        for (int k = d; k < n; k += d) e4[k] += BigInt(240) * d * d * d;
    eta[0] = 1;
    for (int k = 1;; ++k) {
        const int a = k * (3 * k - 1) / 2, b = k * (3 * k + 1) / 2;
        if (a >= n) break;
        const int sign = (k % 2) ? -1 : 1;
        eta[a] += sign;
        if (b < n) eta[b] += sign;
    }
    auto mul_trunc = [n](const std::vector<BigInt>& x, const std::vector<BigInt>& y) {
        std::vector<BigInt> r(n, 0);
        for (int i = 0; i < n; ++i) {
            if (x[i] == 0) continue;
            for (int j = 0; i + j < n; ++j) mpz_addmul(r[i + j].get_mpz_t(), x[i].get_mpz_t(), y[j].get_mpz_t());
        }
        return r;
    };
    const auto e2 = mul_trunc(eta, eta);
    const auto e4p = mul_trunc(e2, e2);
    const auto e8 = mul_trunc(e4p, e4p);
    const auto e16 = mul_trunc(e8, e8);
    const auto dq = mul_trunc(e16, e8);
    std::vector<BigInt> inv(n, 0);
    inv[0] = 1;
    for (int k = 1; k < n; ++k) {
        BigInt s = 0;
        for (int i = 1; i <= k; ++i) mpz_addmul(s.get_mpz_t(), dq[i].get_mpz_t(), inv[k - i].get_mpz_t());
        inv[k] = -s;
    }
    const auto e43 = mul_trunc(mul_trunc(e4, e4), e4);
    return mul_trunc(e43, inv);
}

BivarIntPoly compute_modular_polynomial(int l) {
    require(prime_level(l), ErrorKind::InvalidInput, "level must be prime: " + std::to_string(l));
    require(l <= kMaxModularLevel, ErrorKind::Unsupported, "level above " + std::to_string(kMaxModularLevel));
    constexpr int kCheck = 3;  // extra vanishing coefficients verified after rewriting
    const int T = l * (l + 3 + kCheck) + 2 * l + 8;
    const Series<BigInt> jt = j_series<BigInt>(j_coefficients(T + 1));

    // Power sums over the l conjugates j(zeta^i t), t^l = q: l times the
    // exponent-divisible-by-l part of j(t)^k.
    std::vector<Series<BigInt>> s(l + 1);
    Series<BigInt> pw = jt;
    for (int k = 1; k <= l; ++k) {
        if (k > 1) pw = mul(pw, jt);
        Series<BigInt>& sk = s[k];
        auto floor_div = [](int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); };
        sk.val = -floor_div(-pw.val, l);
        sk.prec = floor_div(pw.prec - 1, l) + 1;
        for (int e = sk.val; e < sk.prec; ++e) sk.c.push_back(BigInt(l) * pw.at(e * l));
        sk.normalize();
    }
    // Newton: k e_k = sum_{i=1}^{k} (-1)^{i-1} e_{k-i} s_i, with e_0 = 1.
    std::vector<Series<BigInt>> e(l + 1);
    for (int k = 1; k <= l; ++k) {
        Series<BigInt> acc = s[k];
        if (k % 2 == 0) acc = scaled(acc, BigInt(-1));
        for (int i = 1; i < k; ++i) {
            const Series<BigInt> t = mul(e[k - i], s[i]);
            acc = add(acc, t, i % 2 == 0);
        }
        for (auto& x : acc.c) {
            require(mpz_divisible_ui_p(x.get_mpz_t(), static_cast<unsigned long>(k)) != 0, ErrorKind::Internal,
                    "Newton identity produced a non-integer");
            x /= k;
        }
        e[k] = acc;
    }
    // Elementary symmetric functions of all l + 1 roots, adding j(q^l).
    const Series<BigInt> J = stretch(jt, l);
    std::vector<Series<BigInt>> E(l + 2);
    E[1] = add(e[1], J);
    for (int k = 2; k <= l; ++k) E[k] = add(e[k], mul(J, e[k - 1]));
    E[l + 1] = mul(J, e[l]);

    std::vector<Series<BigInt>> jp(l + 2);
    jp[1] = jt;
    for (int m = 2; m <= l + 1; ++m) jp[m] = mul(jp[m - 1], jt);

    BivarIntPoly phi;
    phi.set(0, l + 1, 1);
    for (int k = 1; k <= l + 1; ++k) {
        Series<BigInt> S = E[k];
        std::vector<BigInt> coef(l + 2, 0);
        for (int m = std::min(-S.val, l + 1); m >= 1; --m) {
            const BigInt a = S.at(-m);
            if (a == 0) continue;
            coef[m] = a;
            S = add(S, scaled(jp[m], a), true);
        }
        require(S.val >= 0, ErrorKind::Internal, "pole order exceeds l + 1");
        require(S.prec >= 1 + kCheck, ErrorKind::Internal, "series precision too small");
        coef[0] = S.at(0);
        for (int x = 1; x <= kCheck; ++x)
            require(S.at(x) == 0, ErrorKind::Internal, "residual series does not vanish");
        const int sign = (k % 2) ? -1 : 1;
        for (int m = 0; m <= l + 1; ++m)
            if (coef[m] != 0) phi.set(m, l + 1 - k, sign * coef[m]);
    }
    return phi;
}

void validate_modular_polynomial(int l, const BivarIntPoly& poly) {
    auto bad = [l](const std::string& why) {
        fail(ErrorKind::Format, "Phi_" + std::to_string(l) + " failed validation: " + why);
    };
    if (!poly.is_symmetric()) bad("not symmetric");
    if (poly.deg_x() != l + 1 || poly.deg_y() != l + 1) bad("wrong bidegree");
    if (poly.coeff(l + 1, 0) != 1) bad("not monic");
    // Kronecker congruence: Phi = (X^l - Y)(X - Y^l) mod l
    BivarIntPoly kr;
    kr.set(l + 1, 0, 1);
    kr.set(0, l + 1, 1);
    kr.set(l, l, -1);
    kr.set(1, 1, -1);
    std::set<std::pair<int, int>> monos;
    for (const auto& [m, c] : poly.terms()) monos.insert(m);
    for (const auto& [m, c] : kr.terms()) monos.insert(m);
    for (const auto& [i, j] : monos) {
        BigInt d = poly.coeff(i, j) - kr.coeff(i, j);
        if (d % l != 0) bad("Kronecker congruence");
    }
    // Phi(j(q), j(q^l)) = 0 modulo 2^61 - 1.
    const int Nj = (l + 1) * (l + 1) + l + 8;
    const Series<ModP> jq = j_series<ModP>(j_coefficients(Nj + 1));
    const Series<ModP> J = stretch(jq, l);
    std::vector<Series<ModP>> jp(l + 2), Jp(l + 2);
    Series<ModP> one;
    one.val = 0;
    one.prec = Nj;
    one.c.assign(Nj, ModP{});
    one.c[0] = ModP(1);
    jp[0] = Jp[0] = one;
    for (int m = 1; m <= l + 1; ++m) {
        jp[m] = mul(jp[m - 1], jq);
        Jp[m] = mul(Jp[m - 1], J);
    }
    Series<ModP> total;
    bool first = true;
    for (const auto& [m, c] : poly.terms()) {
        const Series<ModP> t = scaled(mul(jp[m.first], Jp[m.second]), ModP::from(c));
        total = first ? t : add(total, t);
        first = false;
    }
    if (total.prec < 1) bad("insufficient check precision");
    for (const auto& x : total.c)
        if (!x.is_zero()) bad("Phi(j(q), j(q^l)) does not vanish");
}

std::string format_modular_polynomial(int l, const BivarIntPoly& poly) {
    std::ostringstream os;
    os << "ell " << l << '\n';
    for (auto it = poly.terms().rbegin(); it != poly.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        if (m.first < m.second) continue;
        os << m.first << ' ' << m.second << ' ' << c.get_str() << '\n';
    }
    return os.str();
}

BivarIntPoly parse_modular_polynomial(const std::string& text, int l) {
    std::istringstream in(text);
    std::string line;
    auto bad = [](const std::string& why) { fail(ErrorKind::Format, "modular polynomial file: " + why); };
    if (!std::getline(in, line)) bad("empty");
    {
        std::istringstream hs(line);
        std::string tag;
        int got = 0;
        std::string rest;
        if (!(hs >> tag >> got) || tag != "ell" || (hs >> rest)) bad("bad header line");
        if (got != l) bad("header says ell " + std::to_string(got) + ", expected " + std::to_string(l));
    }
    BivarIntPoly poly;
    std::set<std::pair<int, int>> seen;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        int i = 0, j = 0;
        std::string cs, rest;
        if (!(ls >> i >> j >> cs) || (ls >> rest)) bad("malformed line " + std::to_string(lineno));
        if (i < j || j < 0) bad("monomial must satisfy i >= j >= 0 on line " + std::to_string(lineno));
        BigInt c;
        if (c.set_str(cs, 10) != 0 || c == 0) bad("bad coefficient on line " + std::to_string(lineno));
        if (!seen.insert({i, j}).second) bad("duplicate monomial on line " + std::to_string(lineno));
        poly.set(i, j, c);
        poly.set(j, i, c);
    }
    validate_modular_polynomial(l, poly);
    return poly;
}

void store_modular_polynomial(const std::filesystem::path& path, int l, const BivarIntPoly& poly) {
    const std::filesystem::path tmp = path.string() + ".tmp" + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        require(static_cast<bool>(out), ErrorKind::InvalidInput, "cannot write " + tmp.string());
        out << format_modular_polynomial(l, poly);
        out.flush();
        require(static_cast<bool>(out), ErrorKind::InvalidInput, "write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

BivarIntPoly load_modular_polynomial(const std::filesystem::path& path, int l) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::NotFound, "no such file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_modular_polynomial(ss.str(), l);
}

void set_modpoly_cache_dir(const std::filesystem::path& dir) {
    std::lock_guard lock(dir_mutex);
    cache_dir = dir;
    dir_initialized = true;
}

std::filesystem::path modpoly_cache_dir() {
    std::lock_guard lock(dir_mutex);
    if (!dir_initialized) {
        if (const char* env = std::getenv("CM_MODPOLY_CACHE")) cache_dir = env;
        dir_initialized = true;
    }
    return cache_dir;
}

const BivarIntPoly& modular_polynomial(int l) {
    require(prime_level(l), ErrorKind::InvalidInput, "level must be prime: " + std::to_string(l));
    require(l <= kMaxModularLevel, ErrorKind::Unsupported, "level above " + std::to_string(kMaxModularLevel));
    {
        std::shared_lock lock(memo_mutex);
        auto it = memo().find(l);
        if (it != memo().end()) return it->second;
    }
    BivarIntPoly phi;
    bool have = false;
    const auto dir = modpoly_cache_dir();
    const auto file = dir / ("phi_" + std::to_string(l) + ".txt");
    if (!dir.empty()) {
        try {
            phi = load_modular_polynomial(file, l);
            have = true;
        } catch (const Error&) {
            // The cache is advisory: recompute on a missing or invalid file.
        }
    }
    if (!have) {
        phi = compute_modular_polynomial(l);
        if (!dir.empty()) {
            try {
                std::filesystem::create_directories(dir);
                store_modular_polynomial(file, l, phi);
            } catch (const std::exception&) {
            }
        }
    }
    std::unique_lock lock(memo_mutex);
    return memo().emplace(l, std::move(phi)).first->second;
}

const BivarFp& modular_polynomial_mod(int l, uint32_t p) {
    {
        std::shared_lock lock(memo_mutex);
        auto it = memo_mod().find({l, p});
        if (it != memo_mod().end()) return it->second;
    }
    BivarFp r = modular_polynomial(l).reduce(p);
    std::unique_lock lock(memo_mutex);
    return memo_mod().emplace(std::make_pair(l, p), std::move(r)).first->second;
}

FqPoly modular_polynomial_at(const FqElem& j0, int l, const FqField& F) {
    return modular_polynomial_mod(l, F.characteristic()).eval_x(j0, F);
}

int HeckeImage::total() const {
    int n = static_cast<int>(roots.size());
    for (const auto& [d, c] : outside) n += c;
    return n;
}

HeckeImage hecke_image(const FqElem& j0, int l, const FqField& F, Rng& rng) {
    require(F.characteristic() != static_cast<uint32_t>(l), ErrorKind::Unsupported,
            "Hecke image in characteristic equal to the level");
    const FqPoly f = modular_polynomial_at(j0, l, F);
    HeckeImage out;
    FqPoly rest = f;
    for (const auto& [r, m] : fqpoly::roots_with_multiplicity(f, F, rng)) {
        for (int k = 0; k < m; ++k) {
            out.roots.push_back(r);
            rest = fqpoly::quo(rest, fqpoly::linear(r, F), F);
        }
    }
    rest = fqpoly::make_monic(rest, F);
    while (fqpoly::degree(rest) > 0) {
        const FqPoly sq = fqpoly::squarefree_part(rest, F);
        const auto ddf = fqpoly::distinct_degree_factorization(fqpoly::make_monic(sq, F), F);
        for (std::size_t d = 1; d < ddf.size(); ++d)
            if (fqpoly::degree(ddf[d]) > 0) out.outside[static_cast<int>(d)] += fqpoly::degree(ddf[d]);
        rest = fqpoly::quo(rest, sq, F);
    }
    return out;
}

std::vector<std::pair<FqElem, FqElem>> hecke_image_pairs(const std::pair<FqElem, FqElem>& x, int l,
                                                         const FqField& F, Rng& rng) {
    const HeckeImage a = hecke_image(x.first, l, F, rng);
    const HeckeImage b = hecke_image(x.second, l, F, rng);
    std::vector<std::pair<FqElem, FqElem>> out;
    for (const auto& u : a.roots)
        for (const auto& v : b.roots) out.emplace_back(u, v);
    return out;
}

}  // namespace cm
