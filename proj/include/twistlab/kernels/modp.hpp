#pragma once

#include <cstddef>
#include <cstdint>

// Row kernels for elimination over F_p, p an odd prime below 2^31.
//
// Every kernel has a portable scalar reference and, on x86-64, an AVX2
// variant built in its own translation unit with -mavx2. The variant is
// chosen at runtime from CPUID; TWL_KERNELS=scalar in the environment forces
// the reference path.

namespace twl::kernels {

/// Montgomery constants for R = 2^32.
struct Modulus {
  std::uint32_t p = 0;
  std::uint32_t neg_inv = 0;  // -p^{-1} mod 2^32
  std::uint32_t r2 = 0;       // R^2 mod p

  static Modulus make(std::uint32_t p);

  /// a * b * R^{-1} mod p for a, b < p.
  std::uint32_t mont_mul(std::uint32_t a, std::uint32_t b) const {
    const std::uint64_t t = static_cast<std::uint64_t>(a) * b;
    const std::uint32_t m = static_cast<std::uint32_t>(t) * neg_inv;
    const std::uint32_t u =
        static_cast<std::uint32_t>((t + static_cast<std::uint64_t>(m) * p) >> 32);
    return u >= p ? u - p : u;
  }
  std::uint32_t to_mont(std::uint32_t x) const { return mont_mul(x, r2); }
};

enum class Isa { kScalar, kAvx2 };

struct ModpKernels {
  Isa isa;
  const char* name;
  /// dst[i] = (dst[i] + f * src[i]) mod p, with f_mont = to_mont(f).
  void (*axpy)(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t f_mont,
               const Modulus& m, std::size_t n);
  /// dst[i] = f * dst[i] mod p, with f_mont = to_mont(f).
  void (*scale)(std::uint32_t* dst, std::uint32_t f_mont, const Modulus& m, std::size_t n);
};

const ModpKernels& scalar_kernels();
/// nullptr when the variant was not compiled in or the CPU lacks AVX2.
const ModpKernels* avx2_kernels();
/// The fastest supported table.
const ModpKernels& active_kernels();

}  // namespace twl::kernels
