#pragma once

// Data-parallel inner loops over prime fields F_p with p < 2^28.
//
// Each kernel has a scalar reference implementation and an AVX2 variant; the
// dispatching entry points pick the AVX2 variant at runtime when the CPU
// supports it. Both variants are exact and must agree bit for bit.

#include <cstdint>
#include <span>

namespace cm::kernels {

enum class Backend { Scalar, Avx2 };

bool avx2_available();
Backend active_backend();
// Override runtime selection (tests use this to compare backends).
// Requesting Avx2 on a machine without it falls back to Scalar.
void force_backend(Backend backend);
void reset_backend();

// dst[i] = (dst[i] + s * src[i]) mod p. Entries of dst, src and s must be < p.
void axpy_mod(std::span<uint32_t> dst, std::span<const uint32_t> src, uint32_t s, uint32_t p);

// Sum over x in [0, p) of chi[(x^3 + a4 x + a6) mod p].
// chi must hold at least p + 3 entries (the tail is padding read by gathers).
int64_t cubic_character_sum(uint32_t a4, uint32_t a6, uint32_t p, std::span<const int8_t> chi);

namespace scalar {
void axpy_mod(std::span<uint32_t> dst, std::span<const uint32_t> src, uint32_t s, uint32_t p);
int64_t cubic_character_sum(uint32_t a4, uint32_t a6, uint32_t p, std::span<const int8_t> chi);
}  // namespace scalar

namespace avx2 {
void axpy_mod(std::span<uint32_t> dst, std::span<const uint32_t> src, uint32_t s, uint32_t p);
int64_t cubic_character_sum(uint32_t a4, uint32_t a6, uint32_t p, std::span<const int8_t> chi);
}  // namespace avx2

}  // namespace cm::kernels
