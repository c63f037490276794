// Compiled with -mavx2; only reached through runtime dispatch.
#include "cm/kernels.hpp"
#include <algorithm>

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace cm::kernels::avx2 {

#if defined(__AVX2__)

namespace {

// Lane-wise (a mod p) for a in [0, 2p).
inline __m256i reduce_once(__m256i a, __m256i pv) {
    return _mm256_min_epu32(a, _mm256_sub_epi32(a, pv));
}

}  // namespace

void axpy_mod(std::span<uint32_t> dst, std::span<const uint32_t> src, uint32_t s, uint32_t p) {
    const std::size_t n = std::min(dst.size(), src.size());
    // Shoup precomputation: s * x mod p = s*x - floor(x * s_pre / 2^32) * p, off by at most p.
    const uint32_t s_pre = static_cast<uint32_t>((static_cast<uint64_t>(s) << 32) / p);
    const __m256i pv = _mm256_set1_epi32(static_cast<int>(p));
    const __m256i sv = _mm256_set1_epi32(static_cast<int>(s));
    const __m256i spv = _mm256_set1_epi32(static_cast<int>(s_pre));
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src.data() + i));
        const __m256i even = _mm256_mul_epu32(x, spv);
        const __m256i odd = _mm256_mul_epu32(_mm256_srli_epi64(x, 32), spv);
        const __m256i q = _mm256_blend_epi32(_mm256_srli_epi64(even, 32), odd, 0b10101010);
        __m256i r = _mm256_sub_epi32(_mm256_mullo_epi32(x, sv), _mm256_mullo_epi32(q, pv));
        r = reduce_once(r, pv);
        const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst.data() + i));
        const __m256i t = reduce_once(_mm256_add_epi32(d, r), pv);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst.data() + i), t);
    }
    if (i < n) scalar::axpy_mod(dst.subspan(i, n - i), src.subspan(i, n - i), s, p);
}

int64_t cubic_character_sum(uint32_t a4, uint32_t a6, uint32_t p, std::span<const int8_t> chi) {
    constexpr uint32_t kLanes = 8;
    if (p < 4 * kLanes) return scalar::cubic_character_sum(a4, a6, p, chi);

    // Each lane walks x = j, j+8, j+16, ... and advances f(x) = x^3 + a4 x + a6
    // by third-order forward differences with step 8, so the loop only adds mod p.
    auto f = [&](uint64_t x) -> uint64_t {
        x %= p;
        return ((x * x % p) * x + static_cast<uint64_t>(a4) * x + a6) % p;
    };
    alignas(32) uint32_t v0[kLanes], v1[kLanes], v2[kLanes];
    for (uint32_t j = 0; j < kLanes; ++j) {
        const uint64_t f0 = f(j), f1 = f(j + kLanes), f2 = f(j + 2 * kLanes);
        v0[j] = static_cast<uint32_t>(f0);
        v1[j] = static_cast<uint32_t>((f1 + p - f0) % p);
        v2[j] = static_cast<uint32_t>((f2 + 2 * static_cast<uint64_t>(p) - 2 * f1 + f0) % p);
    }
    const uint32_t d3 = static_cast<uint32_t>(6ull * kLanes * kLanes * kLanes % p);

    const __m256i pv = _mm256_set1_epi32(static_cast<int>(p));
    __m256i val = _mm256_load_si256(reinterpret_cast<const __m256i*>(v0));
    __m256i del1 = _mm256_load_si256(reinterpret_cast<const __m256i*>(v1));
    __m256i del2 = _mm256_load_si256(reinterpret_cast<const __m256i*>(v2));
    const __m256i del3 = _mm256_set1_epi32(static_cast<int>(d3));
    __m256i acc = _mm256_setzero_si256();
    const int* base = reinterpret_cast<const int*>(chi.data());

    uint32_t x = 0;
    for (; x + kLanes <= p; x += kLanes) {
        __m256i g = _mm256_i32gather_epi32(base, val, 1);
        g = _mm256_srai_epi32(_mm256_slli_epi32(g, 24), 24);
        acc = _mm256_add_epi32(acc, g);
        val = reduce_once(_mm256_add_epi32(val, del1), pv);
        del1 = reduce_once(_mm256_add_epi32(del1, del2), pv);
        del2 = reduce_once(_mm256_add_epi32(del2, del3), pv);
    }
    alignas(32) int32_t lanes[kLanes];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    int64_t sum = 0;
    for (int32_t v : lanes) sum += v;
    for (; x < p; ++x) sum += chi[f(x)];
    return sum;
}

#else

void axpy_mod(std::span<uint32_t> dst, std::span<const uint32_t> src, uint32_t s, uint32_t p) {
    scalar::axpy_mod(dst, src, s, p);
}

int64_t cubic_character_sum(uint32_t a4, uint32_t a6, uint32_t p, std::span<const int8_t> chi) {
    return scalar::cubic_character_sum(a4, a6, p, chi);
}

#endif

}  // namespace cm::kernels::avx2
