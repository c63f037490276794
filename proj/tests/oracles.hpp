#pragma once

// Independent reference computations for the acceptance run: floating-point
// q-series for j, direct enumeration of reduced forms.

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

namespace oracle {

namespace mp = boost::multiprecision;
using cx = mp::cpp_complex_100;
using re = mp::cpp_bin_float_100;

// j = 1728 E4^3 / (E4^3 - E6^2) from the Lambert series of E4 and E6.
inline cx j_of_tau(const cx& tau, int terms = 400) {
    const re pi = boost::math::constants::pi<re>();
    const cx q = mp::exp(cx(0, 2) * pi * tau);
    cx e4 = 1, e6 = 1, qn = 1;
    for (int n = 1; n < terms; ++n) {
        qn *= q;
        const cx t = qn / (cx(1) - qn);
        e4 += 240 * re(n) * n * n * t;
        e6 -= 504 * re(n) * n * n * n * n * t;
    }
    const cx e43 = e4 * e4 * e4;
    return cx(1728) * e43 / (e43 - e6 * e6);
}

struct Form {
    int64_t a, b, c;
};

// Primitive reduced forms of discriminant D < 0: |b| <= a <= c, b >= 0 when
// |b| = a or a = c.
inline std::vector<Form> reduced_forms(int64_t D) {
    std::vector<Form> out;
    for (int64_t a = 1; 3 * a * a <= -D; ++a)
        for (int64_t b = -a + 1; b <= a; ++b) {
            const int64_t num = b * b - D;
            if (num % (4 * a)) continue;
            const int64_t c = num / (4 * a);
            if (c < a || (c == a && b < 0)) continue;
            if (std::gcd(std::gcd(a, b < 0 ? -b : b), c) != 1) continue;
            out.push_back({a, b, c});
        }
    return out;
}

// Coefficients (constant first) of prod (X - j(tau_f)) over reduced forms, rounded.
inline std::vector<std::string> hilbert_coefficients(int64_t D) {
    std::vector<cx> c{cx(1)};
    for (const auto& f : reduced_forms(D)) {
        const cx tau(re(-f.b) / (2 * f.a), mp::sqrt(re(-D)) / (2 * f.a));
        const cx j = j_of_tau(tau);
        std::vector<cx> n(c.size() + 1, cx(0));
        for (std::size_t i = 0; i < c.size(); ++i) {
            n[i + 1] += c[i];
            n[i] -= c[i] * j;
        }
        c = n;
    }
    std::vector<std::string> out;
    for (auto& v : c) out.push_back(mp::cpp_int(mp::round(v.real())).str());
    return out;
}

}  // namespace oracle
