#include "cm/bivar.hpp"

#include <algorithm>
#include <sstream>

#include "cm/error.hpp"

namespace cm {

BivarFp::BivarFp(uint32_t p, std::vector<FpPoly> rows) : p_(p), rows_(std::move(rows)) {
    for (auto& r : rows_) {
        for (auto& c : r) c %= p_;
        fpoly::trim(r);
    }
    trim();
}

void BivarFp::trim() {
    while (!rows_.empty() && rows_.back().empty()) rows_.pop_back();
}

BivarFp BivarFp::constant(uint32_t p, uint32_t c) { return BivarFp(p, {FpPoly{c % p}}); }
BivarFp BivarFp::x(uint32_t p) { return BivarFp(p, {FpPoly{}, FpPoly{1}}); }
BivarFp BivarFp::y(uint32_t p) { return BivarFp(p, {FpPoly{0, 1}}); }

BivarFp BivarFp::from_terms(uint32_t p, const std::vector<std::array<int64_t, 3>>& terms) {
    BivarFp r(p);
    for (const auto& [i, j, c] : terms) {
        require(i >= 0 && j >= 0, ErrorKind::InvalidInput, "negative exponent");
        r.set(static_cast<int>(i), static_cast<int>(j),
              fp::add(r.coeff(static_cast<int>(i), static_cast<int>(j)), fp::from_int(c, p), p));
    }
    return r;
}

uint32_t BivarFp::coeff(int i, int j) const {
    if (i < 0 || i >= static_cast<int>(rows_.size())) return 0;
    const FpPoly& r = rows_[i];
    return (j >= 0 && j < static_cast<int>(r.size())) ? r[j] : 0;
}

void BivarFp::set(int i, int j, uint32_t c) {
    c %= p_;
    if (i >= static_cast<int>(rows_.size())) {
        if (c == 0) return;
        rows_.resize(i + 1);
    }
    FpPoly& r = rows_[i];
    if (j >= static_cast<int>(r.size())) {
        if (c == 0) return;
        r.resize(j + 1, 0);
    }
    r[j] = c;
    fpoly::trim(r);
    trim();
}

int BivarFp::deg_y() const {
    int d = -1;
    for (const auto& r : rows_) d = std::max(d, fpoly::degree(r));
    return d;
}

BivarFp BivarFp::operator+(const BivarFp& o) const {
    std::vector<FpPoly> r(std::max(rows_.size(), o.rows_.size()));
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = fpoly::add(i < rows_.size() ? rows_[i] : FpPoly{}, i < o.rows_.size() ? o.rows_[i] : FpPoly{}, p_);
    return BivarFp(p_, std::move(r));
}

BivarFp BivarFp::operator-(const BivarFp& o) const {
    std::vector<FpPoly> r(std::max(rows_.size(), o.rows_.size()));
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = fpoly::sub(i < rows_.size() ? rows_[i] : FpPoly{}, i < o.rows_.size() ? o.rows_[i] : FpPoly{}, p_);
    return BivarFp(p_, std::move(r));
}

BivarFp BivarFp::operator*(const BivarFp& o) const {
    if (is_zero() || o.is_zero()) return BivarFp(p_);
    std::vector<FpPoly> r(rows_.size() + o.rows_.size() - 1);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i].empty()) continue;
        for (std::size_t j = 0; j < o.rows_.size(); ++j) {
            if (o.rows_[j].empty()) continue;
            r[i + j] = fpoly::add(r[i + j], fpoly::mul(rows_[i], o.rows_[j], p_), p_);
        }
    }
    return BivarFp(p_, std::move(r));
}

BivarFp BivarFp::scaled(uint32_t s) const {
    std::vector<FpPoly> r(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) r[i] = fpoly::scale(rows_[i], s % p_, p_);
    return BivarFp(p_, std::move(r));
}

BivarFp BivarFp::swapped() const {
    BivarFp r(p_);
    for (std::size_t i = 0; i < rows_.size(); ++i)
        for (std::size_t j = 0; j < rows_[i].size(); ++j)
            if (rows_[i][j]) r.set(static_cast<int>(j), static_cast<int>(i), rows_[i][j]);
    return r;
}

BivarFp BivarFp::derivative_x() const {
    std::vector<FpPoly> r(rows_.empty() ? 0 : rows_.size() - 1);
    for (std::size_t i = 1; i < rows_.size(); ++i) r[i - 1] = fpoly::scale(rows_[i], static_cast<uint32_t>(i % p_), p_);
    return BivarFp(p_, std::move(r));
}

BivarFp BivarFp::derivative_y() const {
    std::vector<FpPoly> r(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) r[i] = fpoly::derivative(rows_[i], p_);
    return BivarFp(p_, std::move(r));
}

BivarFp BivarFp::frobenius_twist(int kx, int ky) const {
    int64_t sx = 1, sy = 1;
    for (int i = 0; i < kx; ++i) sx *= p_;
    for (int i = 0; i < ky; ++i) sy *= p_;
    BivarFp r(p_);
    for (std::size_t i = 0; i < rows_.size(); ++i)
        for (std::size_t j = 0; j < rows_[i].size(); ++j)
            if (rows_[i][j]) r.set(static_cast<int>(i * sx), static_cast<int>(j * sy), rows_[i][j]);
    return r;
}

namespace {

FqElem eval_fp_at(const FpPoly& f, const FqElem& x, const FqField& F) {
    FqElem acc{};
    for (auto it = f.rbegin(); it != f.rend(); ++it) {
        acc = F.mul(acc, x);
        acc.c[0] = fp::add(acc.c[0], *it, F.characteristic());
    }
    return acc;
}

}  // namespace

FqPoly BivarFp::eval_y(const FqElem& y, const FqField& F) const {
    FqPoly r(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) r[i] = eval_fp_at(rows_[i], y, F);
    fqpoly::trim(r);
    return r;
}

FqPoly BivarFp::eval_x(const FqElem& x, const FqField& F) const {
    FqPoly r(std::max(0, deg_y() + 1));
    FqElem xp = F.one();
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        for (std::size_t j = 0; j < rows_[i].size(); ++j)
            if (rows_[i][j]) r[j] = F.add(r[j], F.mul_scalar(xp, rows_[i][j]));
        xp = F.mul(xp, x);
    }
    fqpoly::trim(r);
    return r;
}

FqElem BivarFp::eval(const FqElem& x, const FqElem& y, const FqField& F) const {
    return fqpoly::eval(eval_y(y, F), x, F);
}

BivarFp BivarFp::monic() const {
    if (is_zero()) return *this;
    return scaled(fp::inv(rows_.back().back(), p_));
}

std::string BivarFp::to_terms_text() const {
    std::ostringstream os;
    for (int i = deg_x(); i >= 0; --i)
        for (int j = fpoly::degree(rows_[i]); j >= 0; --j)
            if (rows_[i][j]) os << i << ' ' << j << ' ' << rows_[i][j] << '\n';
    return os.str();
}

std::string BivarFp::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = deg_x(); i >= 0; --i)
        for (int j = fpoly::degree(rows_[i]); j >= 0; --j) {
            const uint32_t c = rows_[i][j];
            if (!c) continue;
            if (!first) os << " + ";
            first = false;
            if (c != 1 || (i == 0 && j == 0)) os << c;
            if (c != 1 && (i || j)) os << '*';
            if (i) os << 'X' << (i > 1 ? "^" + std::to_string(i) : "");
            if (i && j) os << '*';
            if (j) os << 'Y' << (j > 1 ? "^" + std::to_string(j) : "");
        }
    return os.str();
}

namespace bivar {

std::optional<BivarFp> exact_div(const BivarFp& a, const BivarFp& b) {
    require(!b.is_zero(), ErrorKind::InvalidInput, "division by zero polynomial");
    const uint32_t p = a.characteristic();
    if (a.is_zero()) return BivarFp(p);
    std::vector<FpPoly> r = a.rows();
    const auto& br = b.rows();
    const int db = b.deg_x();
    std::vector<FpPoly> q(std::max(0, a.deg_x() - db + 1));
    for (int d = a.deg_x(); d >= db; --d) {
        if (r[d].empty()) continue;
        FpPoly t, rem;
        fpoly::divrem(r[d], br.back(), t, rem, p);
        if (!rem.empty()) return std::nullopt;
        q[d - db] = t;
        for (int j = 0; j <= db; ++j) {
            if (br[j].empty()) continue;
            r[d - db + j] = fpoly::sub(r[d - db + j], fpoly::mul(t, br[j], p), p);
        }
    }
    for (int i = 0; i < std::min<int>(db, static_cast<int>(r.size())); ++i)
        if (!r[i].empty()) return std::nullopt;
    return BivarFp(p, std::move(q));
}

bool divides(const BivarFp& b, const BivarFp& a) { return exact_div(a, b).has_value(); }

FpPoly content_x(const BivarFp& f) {
    FpPoly g;
    for (const auto& r : f.rows()) {
        g = fpoly::gcd(g, r, f.characteristic());
        if (g.size() == 1) break;
    }
    return g;
}

int extension_degree_for(uint32_t p, uint64_t n) {
    int k = 1;
    unsigned __int128 q = p;
    while (q < n) {
        q *= p;
        ++k;
    }
    require(k <= kMaxExtensionDegree, ErrorKind::Unsupported, "evaluation field too large");
    return k;
}

namespace {

BivarFp divide_rows(const BivarFp& f, const FpPoly& c) {
    const uint32_t p = f.characteristic();
    std::vector<FpPoly> rows(f.rows().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        FpPoly q, r;
        fpoly::divrem(f.rows()[i], c, q, r, p);
        rows[i] = std::move(q);
    }
    return BivarFp(p, std::move(rows));
}

BivarFp pth_root(const BivarFp& f) {
    const uint32_t p = f.characteristic();
    BivarFp r(p);
    for (int i = 0; i <= f.deg_x(); ++i)
        for (int j = 0; j < static_cast<int>(f.rows()[i].size()); ++j) {
            const uint32_t c = f.rows()[i][j];
            if (!c) continue;
            require(i % p == 0 && j % static_cast<int>(p) == 0, ErrorKind::Internal, "not a p-th power");
            r.set(i / p, j / p, c);
        }
    return r;
}

}  // namespace

BivarFp squarefree_part(const BivarFp& f0) {
    require(!f0.is_zero(), ErrorKind::InvalidInput, "squarefree part of zero polynomial");
    const uint32_t p = f0.characteristic();
    if (f0.is_constant()) return BivarFp::constant(p, 1);
    const BivarFp f = f0.monic();
    const BivarFp fx = f.derivative_x(), fy = f.derivative_y();
    if (fx.is_zero() && fy.is_zero()) return squarefree_part(pth_root(f));
    BivarFp g = f;
    if (!fx.is_zero()) g = gcd_bivar(g, fx);
    if (!fy.is_zero()) g = gcd_bivar(g, fy);
    const BivarFp c = *exact_div(f, g);
    while (true) {
        const BivarFp d = gcd_bivar(g, c);
        if (d.is_constant()) break;
        g = *exact_div(g, d);
    }
    if (g.is_constant()) return c.monic();
    return (c * squarefree_part(pth_root(g.monic()))).monic();
}

}  // namespace bivar

BivarFp gcd_bivar(const BivarFp& f, const BivarFp& g) {
    require(!(f.is_zero() && g.is_zero()), ErrorKind::InvalidInput, "gcd of two zero polynomials");
    if (f.is_zero()) return g.monic();
    if (g.is_zero()) return f.monic();
    const uint32_t p = f.characteristic();
    const FpPoly cf = bivar::content_x(f), cg = bivar::content_x(g);
    const FpPoly c = fpoly::gcd(cf, cg, p);
    const BivarFp content(p, {c});
    const BivarFp f1 = bivar::divide_rows(f, cf), g1 = bivar::divide_rows(g, cg);
    if (f1.deg_x() == 0 || g1.deg_x() == 0) return content.monic();

    const FpPoly& lf = f1.rows().back();
    const FpPoly& lg = g1.rows().back();
    const FpPoly gamma = fpoly::gcd(lf, lg, p);
    const int bound_y = fpoly::degree(gamma) + std::min(f1.deg_y(), g1.deg_y());
    const uint64_t wanted = 4ull * (bound_y + 1 + fpoly::degree(lf) + fpoly::degree(lg)) + 64;
    const FqField F = FqField::make(p, bivar::extension_degree_for(p, wanted));
    const uint64_t q = F.order_u64();

    int min_deg = std::numeric_limits<int>::max();
    std::vector<FqElem> ys;
    std::vector<FqPoly> images;
    for (uint64_t idx = 0; idx < q; ++idx) {
        const FqElem y = F.element_at(idx);
        const FqPoly lfy = fqpoly::from_fp(lf, F), lgy = fqpoly::from_fp(lg, F);
        if (F.is_zero(fqpoly::eval(lfy, y, F)) || F.is_zero(fqpoly::eval(lgy, y, F))) continue;
        const FqPoly u = fqpoly::gcd(f1.eval_y(y, F), g1.eval_y(y, F), F);
        const int d = fqpoly::degree(u);
        if (d == 0) return content.monic();
        if (d > min_deg) continue;
        if (d < min_deg) {
            min_deg = d;
            ys.clear();
            images.clear();
        }
        ys.push_back(y);
        images.push_back(fqpoly::scale(u, fqpoly::eval(fqpoly::from_fp(gamma, F), y, F), F));
        if (static_cast<int>(ys.size()) < bound_y + 1) continue;

        // Interpolate each X-coefficient as a polynomial in Y.
        std::vector<FpPoly> rows(min_deg + 1);
        bool in_base = true;
        for (int i = 0; i <= min_deg && in_base; ++i) {
            std::vector<FqElem> vals(ys.size());
            for (std::size_t t = 0; t < ys.size(); ++t)
                vals[t] = i < static_cast<int>(images[t].size()) ? images[t][i] : FqElem{};
            const FqPoly coeff = fqpoly::interpolate(ys, vals, F);
            FpPoly row(coeff.size());
            for (std::size_t t = 0; t < coeff.size(); ++t) {
                if (!F.in_prime_field(coeff[t])) {
                    in_base = false;
                    break;
                }
                row[t] = coeff[t].c[0];
            }
            rows[i] = std::move(row);
        }
        if (!in_base) continue;
        BivarFp h(p, std::move(rows));
        h = bivar::divide_rows(h, bivar::content_x(h));
        if (bivar::divides(h, f1) && bivar::divides(h, g1)) return (content * h).monic();
    }
    fail(ErrorKind::Internal, "bivariate gcd: evaluation points exhausted");
}

MPolyFp MPolyFp::from_bivar(const BivarFp& f, int sx, int sy) {
    MPolyFp r(f.characteristic());
    for (int i = 0; i <= f.deg_x(); ++i)
        for (int j = 0; j < static_cast<int>(f.rows()[i].size()); ++j) {
            if (!f.rows()[i][j]) continue;
            Exponent e{0, 0, 0};
            e[sx] += i;
            e[sy] += j;
            r.add_term(e, f.rows()[i][j]);
        }
    return r;
}

void MPolyFp::add_term(const Exponent& e, uint32_t c) {
    c %= p_;
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second = fp::add(it->second, c, p_);
        if (it->second == 0) terms_.erase(it);
    }
}

int MPolyFp::degree_in(int slot) const {
    int d = terms_.empty() ? -1 : 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[slot]);
    return d;
}

BivarFp MPolyFp::to_bivar(int sx, int sy) const {
    BivarFp r(p_);
    for (const auto& [e, c] : terms_) {
        for (int s = 0; s < 3; ++s)
            require(s == sx || s == sy || e[s] == 0, ErrorKind::InvalidInput, "polynomial involves a third variable");
        r.set(e[sx], e[sy], fp::add(r.coeff(e[sx], e[sy]), c, p_));
    }
    return r;
}

namespace {

// Coefficients in the eliminated slot after substituting values for the other two.
FqPoly specialize(const MPolyFp& f, int elim, int s1, int s2, const std::vector<FqElem>& pow1,
                  const std::vector<FqElem>& pow2, const FqField& F) {
    FqPoly r(std::max(0, f.degree_in(elim) + 1));
    for (const auto& [e, c] : f.terms()) {
        const FqElem t = F.mul_scalar(F.mul(pow1[e[s1]], pow2[e[s2]]), c);
        r[e[elim]] = F.add(r[e[elim]], t);
    }
    fqpoly::trim(r);
    return r;
}

std::vector<FqElem> powers(const FqElem& x, int n, const FqField& F) {
    std::vector<FqElem> out(std::max(1, n + 1));
    out[0] = F.one();
    for (int i = 1; i <= n; ++i) out[i] = F.mul(out[i - 1], x);
    return out;
}

}  // namespace

MPolyFp resultant_bivar(const MPolyFp& f, const MPolyFp& g, int eliminate) {
    require(eliminate >= 0 && eliminate < 3, ErrorKind::InvalidInput, "bad variable slot");
    require(!f.is_zero() && !g.is_zero(), ErrorKind::InvalidInput, "resultant of zero polynomial");
    require(f.characteristic() == g.characteristic(), ErrorKind::InvalidInput, "characteristic mismatch");
    const uint32_t p = f.characteristic();
    const int m = f.degree_in(eliminate), n = g.degree_in(eliminate);
    require(m > 0 || n > 0, ErrorKind::InvalidInput, "both polynomials are constant in the eliminated variable");

    int s1 = -1, s2 = -1;
    for (int s = 0; s < 3; ++s) {
        if (s == eliminate) continue;
        (s1 < 0 ? s1 : s2) = s;
    }
    const int b1 = m * g.degree_in(s1) + n * f.degree_in(s1);
    const int b2 = m * g.degree_in(s2) + n * f.degree_in(s2);
    const int n1 = b1 + 1, n2 = b2 + 1;
    const FqField F = FqField::make(p, bivar::extension_degree_for(p, static_cast<uint64_t>(std::max(n1, n2))));
    const int maxdeg1 = std::max(f.degree_in(s1), g.degree_in(s1));
    const int maxdeg2 = std::max(f.degree_in(s2), g.degree_in(s2));

    std::vector<FqElem> pts1(n1), pts2(n2);
    for (int i = 0; i < n1; ++i) pts1[i] = F.element_at(i);
    for (int i = 0; i < n2; ++i) pts2[i] = F.element_at(i);
    std::vector<std::vector<FqElem>> pw2(n2);
    for (int j = 0; j < n2; ++j) pw2[j] = powers(pts2[j], maxdeg2, F);

    // For each point of slot s1, the resultant as a polynomial in slot s2.
    std::vector<FqPoly> rows(n1);
    std::vector<FqElem> vals(n2);
    for (int i = 0; i < n1; ++i) {
        const auto pw1 = powers(pts1[i], maxdeg1, F);
        for (int j = 0; j < n2; ++j) {
            const FqPoly fu = specialize(f, eliminate, s1, s2, pw1, pw2[j], F);
            const FqPoly gu = specialize(g, eliminate, s1, s2, pw1, pw2[j], F);
            vals[j] = fqpoly::resultant(fu, m, gu, n, F);
        }
        rows[i] = fqpoly::interpolate(pts2, vals, F);
    }
    MPolyFp out(p);
    std::vector<FqElem> col(n1);
    for (int j = 0; j < n2; ++j) {
        for (int i = 0; i < n1; ++i) col[i] = j < static_cast<int>(rows[i].size()) ? rows[i][j] : FqElem{};
        const FqPoly c = fqpoly::interpolate(pts1, col, F);
        for (int i = 0; i < static_cast<int>(c.size()); ++i) {
            require(F.in_prime_field(c[i]), ErrorKind::Internal, "resultant coefficient outside F_p");
            MPolyFp::Exponent e{0, 0, 0};
            e[s1] = i;
            e[s2] = j;
            out.add_term(e, c[i].c[0]);
        }
    }
    return out;
}

}  // namespace cm
