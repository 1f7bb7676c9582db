#pragma once

#include <cstddef>
#include <cstdint>

// Data-parallel inner loops of the Behrend machinery. Every kernel has a
// scalar reference and (on x86-64) an AVX2 variant; the active table is
// picked once at startup from CPUID, or forced scalar with LDT_SIMD=scalar.

namespace ldt::simd {

// Membership test for one Behrend set Q_r over a base-2^digit_bits digit
// system: v is a member iff 0 <= v < 2^(digits*digit_bits), every digit is
// < digit_limit and the digit squares sum to target.
struct DigitSpec {
  unsigned digits;
  unsigned digit_bits;
  std::uint64_t digit_limit;
  std::uint64_t target;
};

struct KernelTable {
  const char* name;
  // dst[i] += src[i] for i in [0, count).
  void (*accumulate)(std::uint64_t* dst, const std::uint64_t* src, std::size_t count);
  // out[i] = (values[i] + offset) in Q_r ? 1 : 0. |values[i] + offset| < 2^62.
  void (*mark_members)(const std::int64_t* values, std::size_t count, std::int64_t offset,
                       const DigitSpec& spec, std::uint8_t* out);
};

const KernelTable& scalar_kernels();
// nullptr when not compiled in or not supported by this CPU.
const KernelTable* avx2_kernels();
const KernelTable& active_kernels();

}  // namespace ldt::simd
