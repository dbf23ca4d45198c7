#include <cstdlib>
#include <string_view>

#include "twistlab/kernels/modp.hpp"

namespace twl::kernels {

#if defined(TWL_HAVE_AVX2_KERNELS)
const ModpKernels& avx2_table();
#endif

const ModpKernels* avx2_kernels() {
#if defined(TWL_HAVE_AVX2_KERNELS)
  static const bool supported = __builtin_cpu_supports("avx2") != 0;
  return supported ? &avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const ModpKernels& active_kernels() {
  static const ModpKernels* chosen = [] {
    const char* forced = std::getenv("TWL_KERNELS");
    if (forced != nullptr && std::string_view(forced) == "scalar") return &scalar_kernels();
    const ModpKernels* fast = avx2_kernels();
    return fast != nullptr ? fast : &scalar_kernels();
  }();
  return *chosen;
}

}  // namespace twl::kernels
