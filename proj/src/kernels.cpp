#include "cm/kernels.hpp"

#include <algorithm>
#include <atomic>

namespace cm::kernels {

namespace {

Backend detect() { return avx2_available() ? Backend::Avx2 : Backend::Scalar; }

std::atomic<Backend>& backend_slot() {
    static std::atomic<Backend> slot{detect()};
    return slot;
}

}  // namespace

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
    static const bool has = __builtin_cpu_supports("avx2");
    return has;
#else
    return false;
#endif
}

Backend active_backend() { return backend_slot().load(std::memory_order_relaxed); }

void force_backend(Backend backend) {
    if (backend == Backend::Avx2 && !avx2_available()) backend = Backend::Scalar;
    backend_slot().store(backend, std::memory_order_relaxed);
}

void reset_backend() { backend_slot().store(detect(), std::memory_order_relaxed); }

void axpy_mod(std::span<uint32_t> dst, std::span<const uint32_t> src, uint32_t s, uint32_t p) {
    if (active_backend() == Backend::Avx2)
        avx2::axpy_mod(dst, src, s, p);
    else
        scalar::axpy_mod(dst, src, s, p);
}

int64_t cubic_character_sum(uint32_t a4, uint32_t a6, uint32_t p, std::span<const int8_t> chi) {
    if (active_backend() == Backend::Avx2) return avx2::cubic_character_sum(a4, a6, p, chi);
    return scalar::cubic_character_sum(a4, a6, p, chi);
}

namespace scalar {

void axpy_mod(std::span<uint32_t> dst, std::span<const uint32_t> src, uint32_t s, uint32_t p) {
    const std::size_t n = std::min(dst.size(), src.size());
    for (std::size_t i = 0; i < n; ++i)
        dst[i] = static_cast<uint32_t>((dst[i] + static_cast<uint64_t>(s) * src[i]) % p);
}

int64_t cubic_character_sum(uint32_t a4, uint32_t a6, uint32_t p, std::span<const int8_t> chi) {
    int64_t sum = 0;
    for (uint64_t x = 0; x < p; ++x) {
        const uint64_t x2 = x * x % p;
        const uint64_t v = (x2 * x + static_cast<uint64_t>(a4) * x + a6) % p;
        sum += chi[v];
    }
    return sum;
}

}  // namespace scalar

}  // namespace cm::kernels
