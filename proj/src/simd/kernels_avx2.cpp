#include "ldt/simd/kernels.hpp"

#include <immintrin.h>

namespace ldt::simd {

namespace {

void accumulate_avx2(std::uint64_t* dst, const std::uint64_t* src, std::size_t count) {
  std::size_t i = 0;
  for (; i + 8 <= count; i += 8) {
    __m256i d0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    __m256i d1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i + 4));
    const __m256i s0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    const __m256i s1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i + 4));
    d0 = _mm256_add_epi64(d0, s0);
    d1 = _mm256_add_epi64(d1, s1);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), d0);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i + 4), d1);
  }
  for (; i + 4 <= count; i += 4) {
    const __m256i d0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    const __m256i s0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_add_epi64(d0, s0));
  }
  for (; i < count; ++i) dst[i] += src[i];
}

void mark_members_avx2(const std::int64_t* values, std::size_t count, std::int64_t offset,
                       const DigitSpec& spec, std::uint8_t* out) {
  const unsigned total_bits = spec.digits * spec.digit_bits;
  const __m256i off = _mm256_set1_epi64x(offset);
  const __m256i zero = _mm256_setzero_si256();
  const __m256i max_value = _mm256_set1_epi64x(static_cast<std::int64_t>((std::uint64_t{1} << total_bits) - 1));
  const __m256i mask = _mm256_set1_epi64x(static_cast<std::int64_t>((std::uint64_t{1} << spec.digit_bits) - 1));
  const __m256i max_digit = _mm256_set1_epi64x(static_cast<std::int64_t>(spec.digit_limit - 1));
  const __m256i target = _mm256_set1_epi64x(static_cast<std::int64_t>(spec.target));
  const __m128i shift = _mm_cvtsi32_si128(static_cast<int>(spec.digit_bits));

  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256i v =
        _mm256_add_epi64(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(values + i)), off);
    __m256i bad = _mm256_or_si256(_mm256_cmpgt_epi64(zero, v), _mm256_cmpgt_epi64(v, max_value));
    __m256i x = v;
    __m256i sum = zero;
    for (unsigned d = 0; d < spec.digits; ++d) {
      const __m256i digit = _mm256_and_si256(x, mask);
      bad = _mm256_or_si256(bad, _mm256_cmpgt_epi64(digit, max_digit));
      // digits that pass the limit check are < 2^31, so 32x32 products suffice.
      sum = _mm256_add_epi64(sum, _mm256_mul_epu32(digit, digit));
      x = _mm256_srl_epi64(x, shift);
    }
    const __m256i good = _mm256_andnot_si256(bad, _mm256_cmpeq_epi64(sum, target));
    const int bits = _mm256_movemask_pd(_mm256_castsi256_pd(good));
    out[i] = bits & 1;
    out[i + 1] = (bits >> 1) & 1;
    out[i + 2] = (bits >> 2) & 1;
    out[i + 3] = (bits >> 3) & 1;
  }
  if (i < count) scalar_kernels().mark_members(values + i, count - i, offset, spec, out + i);
}

}  // namespace

const KernelTable* avx2_kernels() {
  static const KernelTable table{"avx2", accumulate_avx2, mark_members_avx2};
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &table : nullptr;
}

}  // namespace ldt::simd
