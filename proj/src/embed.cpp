#include "cm/embed.hpp"

#include "cm/error.hpp"
#include "cm/fqpoly.hpp"

namespace cm {

SubfieldEmbedding::SubfieldEmbedding(const FqField& small, const FqField& big) : small_(small), big_(big) {
    require(small.characteristic() == big.characteristic(), ErrorKind::InvalidInput, "fields of different characteristic");
    require(big.degree() % small.degree() == 0, ErrorKind::InvalidInput, "degree does not divide");
    Rng rng(0);
    const auto roots = fqpoly::distinct_roots(fqpoly::from_fp(small.modulus(), big), big, rng);
    require(!roots.empty(), ErrorKind::Internal, "defining polynomial has no root in the extension");
    powers_.push_back(big.one());
    for (int i = 1; i < small.degree(); ++i) powers_.push_back(big.mul(powers_.back(), roots.front()));
}

FqElem SubfieldEmbedding::lift(const FqElem& a) const {
    FqElem r = big_.zero();
    for (int i = 0; i < small_.degree(); ++i)
        if (a.c[i]) r = big_.add(r, big_.mul_scalar(powers_[i], a.c[i]));
    return r;
}

std::optional<FqElem> SubfieldEmbedding::descend(const FqElem& b) const {
    // Solve sum_i x_i powers_[i] = b over F_p by Gaussian elimination.
    const uint32_t p = big_.characteristic();
    const int m = small_.degree(), k = big_.degree();
    std::vector<std::vector<uint32_t>> rows(k, std::vector<uint32_t>(m + 1));
    for (int r = 0; r < k; ++r) {
        for (int i = 0; i < m; ++i) rows[r][i] = powers_[i].c[r];
        rows[r][m] = b.c[r];
    }
    int rank = 0;
    std::vector<int> pivot_col;
    for (int col = 0; col < m && rank < k; ++col) {
        int piv = rank;
        while (piv < k && rows[piv][col] == 0) ++piv;
        if (piv == k) continue;
        std::swap(rows[piv], rows[rank]);
        const uint32_t inv = fp::inv(rows[rank][col], p);
        for (auto& v : rows[rank]) v = fp::mul(v, inv, p);
        for (int r = 0; r < k; ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            const uint32_t f = rows[r][col];
            for (int c = 0; c <= m; ++c) rows[r][c] = fp::sub(rows[r][c], fp::mul(f, rows[rank][c], p), p);
        }
        pivot_col.push_back(col);
        ++rank;
    }
    for (int r = rank; r < k; ++r)
        if (rows[r][m] != 0) return std::nullopt;
    FqElem x{};
    for (int r = 0; r < rank; ++r) x.c[pivot_col[r]] = rows[r][m];
    return x;
}

int minimal_subfield_degree(const FqElem& a, const FqField& F) {
    const int k = F.degree();
    for (int m = 1; m <= k; ++m) {
        if (k % m) continue;
        FqElem x = a;
        for (int i = 0; i < m; ++i) x = F.frobenius(x);
        if (x == a) return m;
    }
    return k;
}

}  // namespace cm
