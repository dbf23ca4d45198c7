#include "twistlab/kernels/modp.hpp"

namespace twl::kernels {

Modulus Modulus::make(std::uint32_t p) {
  Modulus m;
  m.p = p;
  std::uint32_t inv = p;  // Newton iteration for p^{-1} mod 2^32
  for (int i = 0; i < 5; ++i) inv *= 2U - p * inv;
  m.neg_inv = 0U - inv;
  const std::uint64_t r = (std::uint64_t{1} << 32) % p;
  m.r2 = static_cast<std::uint32_t>(r * r % p);
  return m;
}

namespace {

void axpy_scalar(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t f_mont,
                 const Modulus& m, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t s = dst[i] + m.mont_mul(f_mont, src[i]);
    dst[i] = s >= m.p ? s - m.p : s;
  }
}

void scale_scalar(std::uint32_t* dst, std::uint32_t f_mont, const Modulus& m, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = m.mont_mul(f_mont, dst[i]);
}

}  // namespace

const ModpKernels& scalar_kernels() {
  static const ModpKernels table{Isa::kScalar, "scalar", &axpy_scalar, &scale_scalar};
  return table;
}

}  // namespace twl::kernels
