// Compiled with -mavx2; nothing here may run before the dispatcher has
// confirmed CPU support.
//
// Multiplication by a fixed c uses Shoup's precomputed quotient
// c' = floor(c * 2^32 / p): for x < p, q = (x * c') >> 32 and
// r = x * c - q * p (mod 2^32) lies in [0, 2p), so one conditional
// subtraction finishes the reduction.  Valid for p < 2^31.

#include <immintrin.h>

#include "trihoch/simd/modarith.hpp"

namespace trihoch::simd::avx2 {
namespace {

inline std::uint32_t shoup_precompute(std::uint32_t c, std::uint32_t p) {
  return static_cast<std::uint32_t>((static_cast<std::uint64_t>(c) << 32) / p);
}

// min(v, v - p) over unsigned lanes; v < 2p.
inline __m256i reduce_once(__m256i v, __m256i vp) {
  return _mm256_min_epu32(v, _mm256_sub_epi32(v, vp));
}

inline __m256i mulmod_shoup(__m256i x, __m256i vc, __m256i vcp, __m256i vp) {
  __m256i q_even = _mm256_srli_epi64(_mm256_mul_epu32(x, vcp), 32);
  __m256i q_odd = _mm256_mul_epu32(_mm256_srli_epi64(x, 32), vcp);
  __m256i q = _mm256_blend_epi32(q_even, q_odd, 0xAA);
  __m256i r = _mm256_sub_epi32(_mm256_mullo_epi32(x, vc), _mm256_mullo_epi32(q, vp));
  return reduce_once(r, vp);
}

}  // namespace

void axpy_mod(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t c, std::uint32_t p,
              std::size_t n) {
  const std::uint32_t cp = shoup_precompute(c, p);
  const __m256i vc = _mm256_set1_epi32(static_cast<int>(c));
  const __m256i vcp = _mm256_set1_epi32(static_cast<int>(cp));
  const __m256i vp = _mm256_set1_epi32(static_cast<int>(p));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    __m256i s = _mm256_add_epi32(d, mulmod_shoup(x, vc, vcp, vp));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), reduce_once(s, vp));
  }
  if (i < n) scalar::axpy_mod(dst + i, src + i, c, p, n - i);
}

void scale_mod(std::uint32_t* dst, std::uint32_t c, std::uint32_t p, std::size_t n) {
  const std::uint32_t cp = shoup_precompute(c, p);
  const __m256i vc = _mm256_set1_epi32(static_cast<int>(c));
  const __m256i vcp = _mm256_set1_epi32(static_cast<int>(cp));
  const __m256i vp = _mm256_set1_epi32(static_cast<int>(p));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), mulmod_shoup(x, vc, vcp, vp));
  }
  if (i < n) scalar::scale_mod(dst + i, c, p, n - i);
}

}  // namespace trihoch::simd::avx2
