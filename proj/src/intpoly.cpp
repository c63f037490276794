#include "cm/intpoly.hpp"

#include <sstream>

#include "cm/bivar.hpp"
#include "cm/error.hpp"

namespace cm {

IntPoly::IntPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void IntPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const BigInt& IntPoly::coeff(int i) const {
    static const BigInt zero = 0;
    return (i >= 0 && i < static_cast<int>(coeffs_.size())) ? coeffs_[i] : zero;
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<BigInt> r(coeffs_.size() + o.coeffs_.size() - 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) r[i + j] += coeffs_[i] * o.coeffs_[j];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<BigInt> r(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) r[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
    return IntPoly(std::move(r));
}

BigInt IntPoly::eval(const BigInt& x) const {
    BigInt acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

FpPoly IntPoly::reduce(uint32_t p) const {
    FpPoly r(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        BigInt m = coeffs_[i] % p;
        if (m < 0) m += p;
        r[i] = static_cast<uint32_t>(m.get_ui());
    }
    fpoly::trim(r);
    return r;
}

std::string IntPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const BigInt& c = coeffs_[i];
        if (c == 0) continue;
        BigInt mag = abs(c);
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        if (i == 0) {
            os << mag.get_str();
            continue;
        }
        if (mag != 1) os << mag.get_str() << '*';
        os << var;
        if (i > 1) os << '^' << i;
    }
    return os.str();
}

BigInt BivarIntPoly::coeff(int i, int j) const {
    auto it = terms_.find({i, j});
    return it == terms_.end() ? BigInt(0) : it->second;
}

void BivarIntPoly::set(int i, int j, const BigInt& c) {
    if (c == 0)
        terms_.erase({i, j});
    else
        terms_[{i, j}] = c;
}

void BivarIntPoly::add_to(int i, int j, const BigInt& c) { set(i, j, coeff(i, j) + c); }

int BivarIntPoly::deg_x() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.first);
    return d;
}

int BivarIntPoly::deg_y() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.second);
    return d;
}

BivarIntPoly BivarIntPoly::swapped() const {
    BivarIntPoly r;
    for (const auto& [m, c] : terms_) r.terms_[{m.second, m.first}] = c;
    return r;
}

BivarFp BivarIntPoly::reduce(uint32_t p) const {
    BivarFp r(p);
    for (const auto& [m, c] : terms_) {
        BigInt v = c % p;
        if (v < 0) v += p;
        r.set(m.first, m.second, static_cast<uint32_t>(v.get_ui()));
    }
    return r;
}

}  // namespace cm
