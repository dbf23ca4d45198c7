#include <immintrin.h>

#include "twistlab/kernels/modp.hpp"

namespace twl::kernels {

namespace {

// Montgomery product of 8 lanes against a broadcast factor. Even lanes go
// through _mm256_mul_epu32 directly, odd lanes after a 32-bit shift.
// p64 holds p in every 64-bit lane (for the products); p32 in every 32-bit
// lane (for the final conditional subtraction).
inline __m256i mont_mul8(__m256i x, __m256i f, __m256i neg_inv, __m256i p64, __m256i p32) {
  const __m256i x_odd = _mm256_srli_epi64(x, 32);
  const __m256i t_even = _mm256_mul_epu32(x, f);
  const __m256i t_odd = _mm256_mul_epu32(x_odd, f);
  const __m256i m_even = _mm256_mul_epu32(t_even, neg_inv);
  const __m256i m_odd = _mm256_mul_epu32(t_odd, neg_inv);
  const __m256i u_even =
      _mm256_srli_epi64(_mm256_add_epi64(t_even, _mm256_mul_epu32(m_even, p64)), 32);
  const __m256i u_odd = _mm256_add_epi64(t_odd, _mm256_mul_epu32(m_odd, p64));
  // odd results already sit in the high halves
  const __m256i u = _mm256_blend_epi32(u_even, u_odd, 0b10101010);
  return _mm256_min_epu32(u, _mm256_sub_epi32(u, p32));
}

void axpy_avx2(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t f_mont,
               const Modulus& m, std::size_t n) {
  const __m256i f = _mm256_set1_epi64x(f_mont);
  const __m256i neg_inv = _mm256_set1_epi64x(m.neg_inv);
  const __m256i p64 = _mm256_set1_epi64x(m.p);
  const __m256i p32 = _mm256_set1_epi32(static_cast<int>(m.p));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    const __m256i prod = mont_mul8(s, f, neg_inv, p64, p32);
    const __m256i sum = _mm256_add_epi32(d, prod);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i),
                        _mm256_min_epu32(sum, _mm256_sub_epi32(sum, p32)));
  }
  for (; i < n; ++i) {
    std::uint32_t s = dst[i] + m.mont_mul(f_mont, src[i]);
    dst[i] = s >= m.p ? s - m.p : s;
  }
}

void scale_avx2(std::uint32_t* dst, std::uint32_t f_mont, const Modulus& m, std::size_t n) {
  const __m256i f = _mm256_set1_epi64x(f_mont);
  const __m256i neg_inv = _mm256_set1_epi64x(m.neg_inv);
  const __m256i p64 = _mm256_set1_epi64x(m.p);
  const __m256i p32 = _mm256_set1_epi32(static_cast<int>(m.p));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), mont_mul8(d, f, neg_inv, p64, p32));
  }
  for (; i < n; ++i) dst[i] = m.mont_mul(f_mont, dst[i]);
}

}  // namespace

const ModpKernels& avx2_table() {
  static const ModpKernels table{Isa::kAvx2, "avx2", &axpy_avx2, &scale_avx2};
  return table;
}

}  // namespace twl::kernels
