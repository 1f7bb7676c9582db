#include "ldt/simd/kernels.hpp"

namespace ldt::simd {

namespace {

void accumulate_scalar(std::uint64_t* dst, const std::uint64_t* src, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) dst[i] += src[i];
}

void mark_members_scalar(const std::int64_t* values, std::size_t count, std::int64_t offset,
                         const DigitSpec& spec, std::uint8_t* out) {
  const unsigned total_bits = spec.digits * spec.digit_bits;
  const std::uint64_t mask = (std::uint64_t{1} << spec.digit_bits) - 1;
  for (std::size_t i = 0; i < count; ++i) {
    const std::int64_t v = values[i] + offset;
    std::uint8_t ok = 0;
    if (v >= 0 && (static_cast<std::uint64_t>(v) >> total_bits) == 0) {
      std::uint64_t x = static_cast<std::uint64_t>(v);
      std::uint64_t sum = 0;
      bool digits_ok = true;
      for (unsigned d = 0; d < spec.digits; ++d) {
        const std::uint64_t digit = x & mask;
        if (digit >= spec.digit_limit) {
          digits_ok = false;
          break;
        }
        sum += digit * digit;
        x >>= spec.digit_bits;
      }
      ok = digits_ok && sum == spec.target;
    }
    out[i] = ok;
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", accumulate_scalar, mark_members_scalar};
  return table;
}

}  // namespace ldt::simd
