#pragma once

#include <cstdint>
#include <vector>

#include "ldt/simd/kernels.hpp"

// The (gamma, delta)-free family Q_0..Q_R over [0, N):
//   x in Q_r  iff  x = sum_i x_i (pm)^i, 0 <= x_i < m for i < d, sum_i x_i^2 = r,
// with p the smallest power of two above gamma+delta, d = floor(sqrt(log_p N)),
// m = p^(d-1).

namespace ldt::behrend {

struct Params {
  std::uint64_t N = 0;
  std::uint64_t gamma = 0;
  std::uint64_t delta = 0;
  std::uint64_t p = 0;
  unsigned d = 0;
  std::uint64_t m = 0;
  unsigned digit_bits = 0;  // pm == 2^digit_bits
  std::uint64_t r_max = 0;  // d (m-1)^2

  std::uint64_t base() const { return std::uint64_t{1} << digit_bits; }
  unsigned total_bits() const { return d * digit_bits; }
  // (pm)^d: every member of every Q_r is below this.
  std::uint64_t span() const { return std::uint64_t{1} << total_bits(); }
  simd::DigitSpec digit_spec(std::uint64_t r) const { return {d, digit_bits, m, r}; }
};

// Largest N accepted; keeps x + 2^k inside uint64 for every query.
inline constexpr std::uint64_t max_universe = std::uint64_t{1} << 62;

// Throws std::invalid_argument when d would be 0 (N below p) or N is too big.
Params make_params(std::uint64_t N, std::uint64_t gamma, std::uint64_t delta);

bool q_membership(std::uint64_t x, std::uint64_t r, const Params& params);

// |Q_r ∩ [x, x + 2^k)| by the carry dynamic program over base-2^digit_bits
// digits of x + y. Requires r <= r_max, x < 2^62, k <= 62.
std::uint64_t q_count_range(std::uint64_t x, unsigned k, std::uint64_t r, const Params& params);

// Same program, all square sums at once: out[s] = |Q_s ∩ [x, x + 2^k)|.
std::vector<std::uint64_t> q_count_range_all(std::uint64_t x, unsigned k, const Params& params);

std::uint64_t q_size(std::uint64_t r, const Params& params);
// |Q_r| for every r in [0, r_max].
std::vector<std::uint64_t> q_sizes(const Params& params);

struct BestR {
  std::uint64_t r = 0;
  std::uint64_t size = 0;
};

// Densest Q_r, smallest r on ties.
BestR best_r(const Params& params);

// Explicit members of Q_r in increasing order. Only for small families.
std::vector<std::uint64_t> enumerate_q(std::uint64_t r, const Params& params);

// Second counting route: a table ways[j][s] of j-digit strings with square
// sum s turns |Q_r ∩ [0, z)| into one walk over the digits of z.
class PrefixCounter {
 public:
  explicit PrefixCounter(const Params& params);

  std::uint64_t count_below(std::uint64_t z, std::uint64_t r) const;
  std::uint64_t count_range(std::uint64_t x, unsigned k, std::uint64_t r) const {
    return count_below(x + (std::uint64_t{1} << k), r) - count_below(x, r);
  }
  std::uint64_t size(std::uint64_t r) const { return ways(params_.d, r); }
  const Params& params() const { return params_; }

 private:
  std::uint64_t ways(unsigned digits, std::uint64_t s) const {
    return table_[digits * (params_.r_max + 1) + s];
  }

  Params params_;
  std::vector<std::uint64_t> table_;
};

}  // namespace ldt::behrend
