#include "cm/classpoly.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>

#include <mpfr.h>

#include "cm/error.hpp"

namespace cm {

namespace {

// Minimal RAII wrapper over mpfr_t at a fixed precision.
class Real {
public:
    explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_ui(v_, 0, MPFR_RNDN); }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real& operator=(const Real& o) {
        if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

private:
    mpfr_t v_;
};

struct Complex {
    Real re, im;
    explicit Complex(mpfr_prec_t prec) : re(prec), im(prec) {}
};

void cmul(Complex& out, const Complex& a, const Complex& b) {
    const mpfr_prec_t prec = out.re.prec();
    Real t1(prec), t2(prec), r(prec), i(prec);
    mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    mpfr_sub(r.get(), t1.get(), t2.get(), MPFR_RNDN);
    mpfr_mul(t1.get(), a.re.get(), b.im.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), a.im.get(), b.re.get(), MPFR_RNDN);
    mpfr_add(i.get(), t1.get(), t2.get(), MPFR_RNDN);
    mpfr_set(out.re.get(), r.get(), MPFR_RNDN);
    mpfr_set(out.im.get(), i.get(), MPFR_RNDN);
}

void cadd(Complex& out, const Complex& a, const Complex& b) {
    mpfr_add(out.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_add(out.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
}

void csub(Complex& out, const Complex& a, const Complex& b) {
    mpfr_sub(out.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_sub(out.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
}

void cdiv(Complex& out, const Complex& a, const Complex& b) {
    const mpfr_prec_t prec = out.re.prec();
    Real n(prec), t(prec);
    mpfr_sqr(n.get(), b.re.get(), MPFR_RNDN);
    mpfr_sqr(t.get(), b.im.get(), MPFR_RNDN);
    mpfr_add(n.get(), n.get(), t.get(), MPFR_RNDN);
    Complex conj(prec);
    mpfr_set(conj.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_neg(conj.im.get(), b.im.get(), MPFR_RNDN);
    cmul(out, a, conj);
    mpfr_div(out.re.get(), out.re.get(), n.get(), MPFR_RNDN);
    mpfr_div(out.im.get(), out.im.get(), n.get(), MPFR_RNDN);
}

// a += s * b for an integer s
void cadd_scaled(Complex& a, const Complex& b, long s) {
    const mpfr_prec_t prec = a.re.prec();
    Real t(prec);
    mpfr_mul_si(t.get(), b.re.get(), s, MPFR_RNDN);
    mpfr_add(a.re.get(), a.re.get(), t.get(), MPFR_RNDN);
    mpfr_mul_si(t.get(), b.im.get(), s, MPFR_RNDN);
    mpfr_add(a.im.get(), a.im.get(), t.get(), MPFR_RNDN);
}

int64_t sigma3(int64_t n) {
    int64_t s = 0;
    for (int64_t d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        s += d * d * d;
        const int64_t e = n / d;
        if (e != d) s += e * e * e;
    }
    return s;
}

// j((-b + sqrt(D)) / 2a) = E4^3 / Delta with Delta = q prod (1 - q^n)^24.
Complex j_of_form(const QuadForm& f, int64_t D, mpfr_prec_t prec) {
    Real pi(prec), r(prec), theta(prec), t(prec);
    mpfr_const_pi(pi.get(), MPFR_RNDN);
    // |q| = exp(-pi sqrt|D| / a), arg q = -pi b / a
    mpfr_sqrt_ui(t.get(), static_cast<unsigned long>(-D), MPFR_RNDN);
    mpfr_mul(t.get(), t.get(), pi.get(), MPFR_RNDN);
    mpfr_div_si(t.get(), t.get(), f.a, MPFR_RNDN);
    const double decay = mpfr_get_d(t.get(), MPFR_RNDN);
    mpfr_neg(r.get(), t.get(), MPFR_RNDN);
    mpfr_exp(r.get(), r.get(), MPFR_RNDN);
    mpfr_mul_si(theta.get(), pi.get(), -f.b, MPFR_RNDN);
    mpfr_div_si(theta.get(), theta.get(), f.a, MPFR_RNDN);
    Complex q(prec);
    mpfr_sin_cos(q.im.get(), q.re.get(), theta.get(), MPFR_RNDN);
    mpfr_mul(q.re.get(), q.re.get(), r.get(), MPFR_RNDN);
    mpfr_mul(q.im.get(), q.im.get(), r.get(), MPFR_RNDN);

    const int64_t N = static_cast<int64_t>(std::ceil(static_cast<double>(prec) * std::log(2.0) / decay)) + 4;
    std::vector<Complex> qp;
    qp.reserve(N + 1);
    qp.emplace_back(prec);
    mpfr_set_ui(qp[0].re.get(), 1, MPFR_RNDN);
    for (int64_t n = 1; n <= N; ++n) {
        qp.emplace_back(prec);
        cmul(qp[n], qp[n - 1], q);
    }
    Complex e4 = qp[0];
    for (int64_t n = 1; n <= N; ++n) cadd_scaled(e4, qp[n], 240 * sigma3(n));
    // Euler's pentagonal number theorem for prod (1 - q^n).
    Complex eta = qp[0];
    for (int64_t k = 1;; ++k) {
        const int64_t e1 = k * (3 * k - 1) / 2, e2 = k * (3 * k + 1) / 2;
        if (e1 > N) break;
        const long sign = (k % 2) ? -1 : 1;
        cadd_scaled(eta, qp[e1], sign);
        if (e2 <= N) cadd_scaled(eta, qp[e2], sign);
    }
    Complex e2(prec), e8(prec), e16(prec), delta(prec), e4c(prec), j(prec);
    cmul(e2, eta, eta);
    cmul(e8, e2, e2);
    cmul(e8, e8, e8);
    cmul(e16, e8, e8);
    cmul(delta, e16, e8);
    cmul(delta, delta, q);
    cmul(e4c, e4, e4);
    cmul(e4c, e4c, e4);
    cdiv(j, e4c, delta);
    return j;
}

std::shared_mutex cache_mutex;
std::map<int64_t, IntPoly>& cache() {
    static std::map<int64_t, IntPoly> c;
    return c;
}

}  // namespace

long hilbert_precision_digits(int64_t D) {
    const ClassGroup G(D);
    double inv_a = 0;
    for (const auto& f : G.forms()) inv_a += 1.0 / static_cast<double>(f.a);
    return 15 + static_cast<long>(std::ceil(M_PI * std::sqrt(static_cast<double>(-D)) / std::log(10.0) * inv_a));
}

IntPoly hilbert_class_polynomial_at(int64_t D, long digits) {
    const ClassGroup G(D);
    const mpfr_prec_t prec = static_cast<mpfr_prec_t>(std::ceil(digits * std::log2(10.0))) + 32;
    std::vector<Complex> coeffs;
    coeffs.emplace_back(prec);
    mpfr_set_ui(coeffs[0].re.get(), 1, MPFR_RNDN);
    for (const auto& f : G.forms()) {
        const Complex j = j_of_form(f, D, prec);
        // multiply by (X - j)
        std::vector<Complex> next(coeffs.size() + 1, Complex(prec));
        Complex t(prec);
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            cadd(next[i + 1], next[i + 1], coeffs[i]);
            cmul(t, coeffs[i], j);
            csub(next[i], next[i], t);
        }
        coeffs = std::move(next);
    }
    std::vector<BigInt> out(coeffs.size());
    Real diff(prec);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        mpz_t z;
        mpz_init(z);
        mpfr_get_z(z, coeffs[i].re.get(), MPFR_RNDN);
        out[i] = BigInt(z);
        mpfr_sub_z(diff.get(), coeffs[i].re.get(), z, MPFR_RNDN);
        mpz_clear(z);
        const bool bad = std::abs(mpfr_get_d(diff.get(), MPFR_RNDN)) > 0.01 ||
                         std::abs(mpfr_get_d(coeffs[i].im.get(), MPFR_RNDN)) > 0.01;
        if (bad) fail(ErrorKind::Precision, "H_" + std::to_string(D) + ": coefficient not near an integer");
    }
    return IntPoly(std::move(out));
}

IntPoly hilbert_class_polynomial(int64_t D) {
    {
        std::shared_lock lock(cache_mutex);
        auto it = cache().find(D);
        if (it != cache().end()) return it->second;
    }
    long digits = hilbert_precision_digits(D);
    IntPoly H;
    for (int attempt = 0;; ++attempt) {
        try {
            H = hilbert_class_polynomial_at(D, digits);
            break;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Precision || attempt >= 4) throw;
            digits *= 2;
        }
    }
    std::unique_lock lock(cache_mutex);
    cache().emplace(D, H);
    return H;
}

OrderSpec prime_to_p_conductor(int64_t D, uint64_t p) {
    const OrderSpec o = OrderSpec::from_discriminant(D);
    int64_t f = o.f;
    while (f % static_cast<int64_t>(p) == 0) f /= static_cast<int64_t>(p);
    return OrderSpec{o.dK * f * f, o.dK, f};
}

ReducedJSet reduced_j_set(int64_t D, uint64_t p, uint64_t seed) {
    check_field_prime(p);
    const OrderSpec red = prime_to_p_conductor(D, p);
    ReducedJSet out;
    out.D = D;
    out.D_reduced = red.D;
    out.p = static_cast<uint32_t>(p);
    const FpPoly h = hilbert_class_polynomial(red.D).reduce(out.p);
    Rng rng(seed);
    if (kronecker(red.dK, p) == 1) {
        out.kind = ReductionKind::Ordinary;
        const ClassGroup G(red.D);
        out.residue_degree = G.element_order(G.index_of(prime_class(p, red.D)));
        out.field = FqField::make(p, out.residue_degree);
    } else {
        out.kind = ReductionKind::Supersingular;
        out.field = FqField::make(p, 2);
    }
    out.roots = fqpoly::distinct_roots(fqpoly::from_fp(h, out.field), out.field, rng);
    if (out.kind == ReductionKind::Supersingular) {
        out.residue_degree = 1;
        for (const auto& r : out.roots)
            if (!out.field.in_prime_field(r)) out.residue_degree = 2;
    }
    return out;
}

}  // namespace cm
