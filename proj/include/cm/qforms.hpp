#pragma once

// Binary quadratic forms and class groups of imaginary quadratic orders.

#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace cm {

// The order of discriminant D = d_K * f^2.
struct OrderSpec {
    int64_t D = 0;
    int64_t dK = 0;
    int64_t f = 1;

    static OrderSpec from_discriminant(int64_t D);
    bool operator==(const OrderSpec&) const = default;
};

bool is_discriminant(int64_t D);
bool is_fundamental_discriminant(int64_t D);

struct QuadForm {
    int64_t a = 1, b = 0, c = 1;

    int64_t discriminant() const { return b * b - 4 * a * c; }
    bool operator==(const QuadForm&) const = default;
    auto operator<=>(const QuadForm&) const = default;
    std::string to_string() const;  // "a b c"
};

// Unique reduced form equivalent to g: |b| <= a <= c, b >= 0 if |b| = a or a = c.
QuadForm reduce_form(const QuadForm& g);
// Composition followed by reduction; both forms must share the discriminant.
QuadForm compose(const QuadForm& f, const QuadForm& g);

class ClassGroup {
public:
    explicit ClassGroup(int64_t D);

    const OrderSpec& order() const { return order_; }
    int64_t discriminant() const { return order_.D; }
    int size() const { return static_cast<int>(forms_.size()); }
    // Principal form first, then increasing (a, b).
    const std::vector<QuadForm>& forms() const { return forms_; }
    const QuadForm& form(int i) const { return forms_[i]; }

    // Index of the class of an arbitrary primitive form of this discriminant.
    int index_of(const QuadForm& g) const;
    int identity() const { return 0; }
    int mul(int i, int j) const { return table_[static_cast<std::size_t>(i) * forms_.size() + j]; }
    int inverse(int i) const { return inverse_[i]; }
    int pow(int i, int64_t e) const;
    int element_order(int i) const;

private:
    OrderSpec order_;
    std::vector<QuadForm> forms_;
    std::vector<int> table_;
    std::vector<int> inverse_;
};

// Kronecker symbol (D / n) for n >= 1.
int kronecker(int64_t D, uint64_t n);

// Reduced class of (l, b, (b^2 - D) / 4l), b the least nonnegative root of
// b^2 = D mod 4l with b = D mod 2. Requires kronecker(D, l) = 1.
QuadForm prime_class(uint64_t l, int64_t D);
// The b of that form before reduction.
int64_t prime_form_b(uint64_t l, int64_t D);

// Least prime l >= start, split in both orders, prime to both conductors,
// not in exclude. Throws NotFound past bound.
uint64_t find_split_prime(int64_t D1, int64_t D2, const std::set<uint64_t>& exclude, uint64_t start,
                          uint64_t bound = 1000000);

// Number of units of the order: 6, 4 or 2.
int unit_count(int64_t D);

}  // namespace cm
