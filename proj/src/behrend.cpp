#include "ldt/behrend.hpp"

#include <array>
#include <bit>
#include <stdexcept>
#include <string>

namespace ldt::behrend {

Params make_params(std::uint64_t N, std::uint64_t gamma, std::uint64_t delta) {
  if (gamma == 0 || delta == 0) throw std::invalid_argument("gamma and delta must be positive");
  if (N == 0 || N > max_universe) throw std::invalid_argument("N must be in [1, 2^62]");
  if (gamma + delta >= (std::uint64_t{1} << 61)) throw std::invalid_argument("gamma + delta too large");

  Params P;
  P.N = N;
  P.gamma = gamma;
  P.delta = delta;
  P.p = std::bit_ceil(gamma + delta + 1);
  const unsigned log2p = static_cast<unsigned>(std::countr_zero(P.p));
  // floor(log_p N) for p = 2^log2p.
  const unsigned log_p_N = (static_cast<unsigned>(std::bit_width(N)) - 1) / log2p;
  unsigned d = 0;
  while ((d + 1) * (d + 1) <= log_p_N) ++d;
  if (d == 0) {
    throw std::invalid_argument("N = " + std::to_string(N) + " is below p = " + std::to_string(P.p) +
                                "; the construction needs d >= 1");
  }
  P.d = d;
  P.m = std::uint64_t{1} << (log2p * (d - 1));
  P.digit_bits = log2p * d;
  P.r_max = static_cast<std::uint64_t>(d) * (P.m - 1) * (P.m - 1);
  return P;
}

bool q_membership(std::uint64_t x, std::uint64_t r, const Params& P) {
  if (x >= P.span()) return false;
  const std::uint64_t mask = P.base() - 1;
  std::uint64_t sum = 0;
  for (unsigned i = 0; i < P.d; ++i) {
    const std::uint64_t digit = x & mask;
    if (digit >= P.m) return false;
    sum += digit * digit;
    x >>= P.digit_bits;
  }
  return sum == r;
}

namespace {

std::uint64_t digit_at(std::uint64_t x, unsigned pos, unsigned bits) {
  const unsigned shift = pos * bits;
  if (shift >= 64) return 0;
  return (x >> shift) & ((std::uint64_t{1} << bits) - 1);
}

void check_query(std::uint64_t x, unsigned k) {
  if (k > 62) throw std::invalid_argument("range exponent k must be <= 62");
  if (x >= (std::uint64_t{1} << 62)) throw std::invalid_argument("range start must be < 2^62");
}

}  // namespace

std::vector<std::uint64_t> q_count_range_all(std::uint64_t x, unsigned k, const Params& P) {
  check_query(x, k);
  const auto& kernels = simd::active_kernels();
  const std::size_t width = P.r_max + 1;
  const unsigned kp = P.digit_bits;
  const std::uint64_t base = P.base();
  const unsigned full = k / kp;
  const unsigned partial_bits = k % kp;
  const unsigned positions = full + (partial_bits > 0 ? 1 : 0);

  // dp[c][s]: number of y's (restricted to the processed low digits) for
  // which the processed digits of x+y are valid, square-sum to s, and carry c
  // into the next position.
  std::array<std::vector<std::uint64_t>, 2> dp{std::vector<std::uint64_t>(width, 0),
                                               std::vector<std::uint64_t>(width, 0)};
  std::array<std::vector<std::uint64_t>, 2> next = dp;
  std::array<bool, 2> live{true, false};
  dp[0][0] = 1;

  for (unsigned i = 0; i < positions; ++i) {
    const std::uint64_t y_len = i < full ? base : (std::uint64_t{1} << partial_bits);
    const std::uint64_t xi = digit_at(x, i, kp);
    // Positions at or above d must end up 0 in any member.
    const std::uint64_t limit = i < P.d ? P.m : 1;
    std::fill(next[0].begin(), next[0].end(), 0);
    std::fill(next[1].begin(), next[1].end(), 0);
    std::array<bool, 2> next_live{false, false};

    for (unsigned c_in = 0; c_in < 2; ++c_in) {
      if (!live[c_in]) continue;
      // x_i + y_i + c_in ranges over [v_lo, v_hi]; each value is one y_i.
      const std::uint64_t v_lo = xi + c_in;
      const std::uint64_t v_hi = xi + c_in + y_len - 1;
      for (unsigned c_out = 0; c_out < 2; ++c_out) {
        const std::uint64_t window_lo = c_out * base;
        const std::uint64_t window_hi = window_lo + base - 1;
        const std::uint64_t lo = std::max(v_lo, window_lo);
        std::uint64_t hi = std::min(v_hi, window_hi);
        if (lo > hi) continue;
        // sigma = v - c_out * base is the digit of x+y at position i.
        const std::uint64_t sigma_lo = lo - window_lo;
        std::uint64_t sigma_hi = hi - window_lo;
        if (sigma_lo >= limit) continue;
        sigma_hi = std::min(sigma_hi, limit - 1);
        for (std::uint64_t sigma = sigma_lo; sigma <= sigma_hi; ++sigma) {
          const std::uint64_t sq = sigma * sigma;
          if (sq >= width) break;
          kernels.accumulate(next[c_out].data() + sq, dp[c_in].data(), width - sq);
          next_live[c_out] = true;
        }
      }
    }
    std::swap(dp, next);
    live = next_live;
  }

  // Digits above the processed ones are those of x plus the final carry.
  std::vector<std::uint64_t> out(width, 0);
  const unsigned shift = positions * kp;
  const std::uint64_t x_high = shift >= 64 ? 0 : (x >> shift);
  for (unsigned c = 0; c < 2; ++c) {
    if (!live[c]) continue;
    std::uint64_t high = x_high + c;
    std::uint64_t s_high = 0;
    bool valid = true;
    for (unsigned pos = positions; high != 0; ++pos) {
      const std::uint64_t digit = high & (base - 1);
      if (pos >= P.d || digit >= P.m) {
        valid = false;
        break;
      }
      s_high += digit * digit;
      high >>= kp;
    }
    if (!valid || s_high >= width) continue;
    kernels.accumulate(out.data() + s_high, dp[c].data(), width - s_high);
  }
  return out;
}

std::uint64_t q_count_range(std::uint64_t x, unsigned k, std::uint64_t r, const Params& P) {
  if (r > P.r_max) throw std::invalid_argument("r exceeds r_max");
  return q_count_range_all(x, k, P)[r];
}

std::vector<std::uint64_t> q_sizes(const Params& P) { return q_count_range_all(0, P.total_bits(), P); }

std::uint64_t q_size(std::uint64_t r, const Params& P) {
  return q_count_range(0, P.total_bits(), r, P);
}

BestR best_r(const Params& P) {
  const auto sizes = q_sizes(P);
  BestR best{0, sizes[0]};
  for (std::uint64_t r = 1; r < sizes.size(); ++r) {
    if (sizes[r] > best.size) best = {r, sizes[r]};
  }
  return best;
}

std::vector<std::uint64_t> enumerate_q(std::uint64_t r, const Params& P) {
  if (r > P.r_max) throw std::invalid_argument("r exceeds r_max");
  std::vector<std::uint64_t> out;
  std::vector<std::uint64_t> digits(P.d, 0);
  // Odometer over digits in [0, m), high digit most significant for ordering.
  auto recurse = [&](auto& self, int pos, std::uint64_t remaining, std::uint64_t value) -> void {
    if (pos < 0) {
      if (remaining == 0) out.push_back(value);
      return;
    }
    for (std::uint64_t v = 0; v < P.m && v * v <= remaining; ++v) {
      self(self, pos - 1, remaining - v * v, value + (v << (static_cast<unsigned>(pos) * P.digit_bits)));
    }
  };
  recurse(recurse, static_cast<int>(P.d) - 1, r, 0);
  return out;
}

PrefixCounter::PrefixCounter(const Params& params) : params_(params) {
  const std::size_t width = params_.r_max + 1;
  table_.assign((params_.d + 1) * width, 0);
  table_[0] = 1;
  for (unsigned j = 1; j <= params_.d; ++j) {
    const std::uint64_t* prev = table_.data() + (j - 1) * width;
    std::uint64_t* cur = table_.data() + j * width;
    for (std::uint64_t v = 0; v < params_.m; ++v) {
      const std::uint64_t sq = v * v;
      if (sq >= width) break;
      simd::active_kernels().accumulate(cur + sq, prev, width - sq);
    }
  }
}

std::uint64_t PrefixCounter::count_below(std::uint64_t z, std::uint64_t r) const {
  if (r > params_.r_max) throw std::invalid_argument("r exceeds r_max");
  if (z >= params_.span()) return size(r);
  const unsigned bits = params_.digit_bits;
  std::uint64_t total = 0;
  std::uint64_t remaining = r;
  for (int pos = static_cast<int>(params_.d) - 1; pos >= 0; --pos) {
    const std::uint64_t zi = (z >> (static_cast<unsigned>(pos) * bits)) & (params_.base() - 1);
    const std::uint64_t below = std::min(zi, params_.m);
    for (std::uint64_t v = 0; v < below && v * v <= remaining; ++v) {
      total += ways(static_cast<unsigned>(pos), remaining - v * v);
    }
    if (zi >= params_.m || zi * zi > remaining) return total;
    remaining -= zi * zi;
  }
  return total;
}

}  // namespace ldt::behrend
