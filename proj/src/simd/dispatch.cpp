#include <cstdlib>
#include <cstring>

#include "ldt/simd/kernels.hpp"

namespace ldt::simd {

#ifndef LDT_HAVE_AVX2
const KernelTable* avx2_kernels() { return nullptr; }
#endif

const KernelTable& active_kernels() {
  static const KernelTable& table = [] () -> const KernelTable& {
    const char* forced = std::getenv("LDT_SIMD");
    if (forced != nullptr && std::strcmp(forced, "scalar") == 0) return scalar_kernels();
    if (const KernelTable* avx2 = avx2_kernels()) return *avx2;
    return scalar_kernels();
  }();
  return table;
}

}  // namespace ldt::simd
