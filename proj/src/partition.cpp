#include "ldt/partition.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace ldt::partition {

namespace {

constexpr std::uint64_t max_shift_universe = std::uint64_t{1} << 60;

// |Q_r ∩ [lo, lo + 2^k)| for any signed lo.
class WindowCounter {
 public:
  WindowCounter(const behrend::Params& params, std::uint64_t r, CountMethod method,
                const behrend::PrefixCounter* prefix)
      : params_(params), r_(r), method_(method), prefix_(prefix) {}

  std::uint64_t count(Value lo, unsigned k) const {
    const Value len = Value{1} << k;
    if (lo >= 0) {
      if (static_cast<std::uint64_t>(lo) >= params_.span()) return 0;
      return aligned(static_cast<std::uint64_t>(lo), k);
    }
    const Value end = lo + len;
    if (end <= 0) return 0;
    // Only [0, end) can hold members.
    if (method_ == CountMethod::prefix_table) return prefix_->count_below(static_cast<std::uint64_t>(end), r_);
    std::uint64_t total = 0;
    std::uint64_t start = 0;
    for (int j = 62; j >= 0; --j) {
      if ((static_cast<std::uint64_t>(end) >> j) & 1) {
        total += aligned(start, static_cast<unsigned>(j));
        start += std::uint64_t{1} << j;
      }
    }
    return total;
  }

 private:
  std::uint64_t aligned(std::uint64_t x, unsigned k) const {
    if (method_ == CountMethod::prefix_table) return prefix_->count_range(x, k, r_);
    return behrend::q_count_range(x, k, r_, params_);
  }

  const behrend::Params& params_;
  std::uint64_t r_;
  CountMethod method_;
  const behrend::PrefixCounter* prefix_;
};

ShiftResult find_shift_with(std::span<const Value> A, std::uint64_t r, const behrend::Params& P,
                            const ShiftOptions& options, const behrend::PrefixCounter* prefix,
                            std::uint64_t q) {
  if (A.empty()) throw std::invalid_argument("find_shift: A is empty");
  if (r > P.r_max) throw std::invalid_argument("find_shift: r exceeds r_max");
  if (q == 0) throw std::invalid_argument("find_shift: Q_r is empty");
  if (P.N > max_shift_universe) throw std::invalid_argument("find_shift: N above 2^60");
  const Value N = static_cast<Value>(P.N);
  bool inside_base = true;
  for (Value a : A) {
    if (a < -(N - 1) || a > N - 1) throw std::invalid_argument("find_shift: element outside [-N+1, N-1]");
    if (a < 0) inside_base = false;
  }

  const WindowCounter counter(P, r, options.method, prefix);
  unsigned K = 0;
  while ((std::uint64_t{1} << K) <= 2 * (P.N - 1)) ++K;

  // numer(k, tau) = sum_a |Q_r ∩ [a' - tau - 2^k + 1, a' - tau]|, a' = a + N - 1,
  // so that E[|(Q_r + D) ∩ (A' - tau)| : D in [0, 2^k)] = numer / 2^k.
  auto numer = [&](unsigned k, Value tau) {
    std::uint64_t total = 0;
    const Value width = Value{1} << k;
    for (Value a : A) total += counter.count(a + (N - 1) - tau - width + 1, k);
    return total;
  };

  ShiftResult result;
  Value tau = 0;
  std::uint64_t current = numer(K, 0);
  if (options.audit && inside_base && current != static_cast<std::uint64_t>(A.size()) * q) {
    throw std::logic_error("find_shift: initial expectation differs from |A||Q_r| / 2^K");
  }
  if (options.trace) result.steps.push_back({K, current});

  for (unsigned k = K; k >= 1; --k) {
    const Value half = Value{1} << (k - 1);
    const std::uint64_t zero_branch = numer(k - 1, tau);
    std::uint64_t one_branch;
    if (options.audit) {
      one_branch = numer(k - 1, tau + half);
      if (zero_branch + one_branch != current) {
        throw std::logic_error("find_shift: branch expectations do not average to the parent");
      }
    } else {
      one_branch = current - zero_branch;
    }
    const std::uint64_t previous = current;
    if (one_branch > zero_branch) {
      tau += half;
      current = one_branch;
    } else {
      current = zero_branch;
    }
    // E_{k-1} = current / 2^{k-1} >= E_k = previous / 2^k.
    if (2 * current < previous) throw std::logic_error("find_shift: expectation decreased");
    if (options.trace) result.steps.push_back({k - 1, current});
  }

  result.delta = tau - (N - 1);
  std::uint64_t hits = 0;
  for (Value a : A) {
    const Value x = a - result.delta;
    if (x >= 0 && behrend::q_membership(static_cast<std::uint64_t>(x), r, P)) ++hits;
  }
  if (hits != current) throw std::logic_error("find_shift: final expectation differs from hit count");
  result.hit_count = hits;
  if (inside_base && static_cast<WideInt>(hits) * 2 * static_cast<WideInt>(P.N) <
                         static_cast<WideInt>(A.size()) * q) {
    throw std::logic_error("find_shift: shift bound violated");
  }
  return result;
}

Extraction extract_with(std::span<const Value> A, std::uint64_t r, const behrend::Params& P,
                        const ShiftOptions& options, const behrend::PrefixCounter* prefix,
                        std::uint64_t q) {
  const ShiftResult shift = find_shift_with(A, r, P, options, prefix, q);
  std::vector<std::uint8_t> member(A.size());
  const auto spec = P.digit_spec(r);
  simd::active_kernels().mark_members(A.data(), A.size(), -shift.delta, spec, member.data());
  Extraction out;
  out.delta = shift.delta;
  for (std::size_t i = 0; i < A.size(); ++i) (member[i] ? out.free_part : out.rest).push_back(A[i]);
  return out;
}

}  // namespace

ShiftResult find_shift(std::span<const Value> A, std::uint64_t r, const behrend::Params& params,
                       const ShiftOptions& options) {
  const behrend::PrefixCounter prefix(params);
  const std::uint64_t q = options.method == CountMethod::prefix_table ? prefix.size(r)
                                                                      : behrend::q_size(r, params);
  return find_shift_with(A, r, params, options, &prefix, q);
}

Extraction extract_free_subset(std::span<const Value> A, std::uint64_t r,
                               const behrend::Params& params, const ShiftOptions& options) {
  const behrend::PrefixCounter prefix(params);
  const std::uint64_t q = options.method == CountMethod::prefix_table ? prefix.size(r)
                                                                      : behrend::q_size(r, params);
  return extract_with(A, r, params, options, &prefix, q);
}

std::uint64_t iteration_cap(std::size_t set_size, std::uint64_t q, std::uint64_t N) {
  if (q == 0) return 0;
  if (set_size <= 1) return 1;
  const double fraction = static_cast<double>(q) / (2.0 * static_cast<double>(N));
  const double steps = std::ceil(std::log(static_cast<double>(set_size)) / -std::log1p(-fraction));
  if (!(steps < 1.8e19)) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(steps) + 1;
}

FreePartition partition_free(std::span<const Value> A, std::uint64_t gamma, std::uint64_t delta,
                             std::optional<Value> universe, const ShiftOptions& options) {
  if (A.empty()) throw std::invalid_argument("partition_free: empty set");
  std::vector<Value> source(A.begin(), A.end());
  std::sort(source.begin(), source.end());
  if (std::adjacent_find(source.begin(), source.end()) != source.end()) {
    throw std::invalid_argument("partition_free: input has duplicates");
  }
  Value N0 = 0;
  for (Value a : source) N0 = std::max(N0, checked_abs(a));
  if (universe) {
    if (*universe < N0) throw std::invalid_argument("partition_free: element outside [-N0, N0]");
    N0 = *universe;
  }
  const std::uint64_t p = std::bit_ceil(gamma + delta + 1);
  const std::uint64_t N = std::max<std::uint64_t>(2 * static_cast<std::uint64_t>(N0) + 1, p);
  const behrend::Params params = behrend::make_params(N, gamma, delta);
  const behrend::PrefixCounter prefix(params);

  std::vector<std::uint64_t> sizes = options.method == CountMethod::prefix_table
                                         ? std::vector<std::uint64_t>{}
                                         : behrend::q_sizes(params);
  auto size_of = [&](std::uint64_t r) {
    return options.method == CountMethod::prefix_table ? prefix.size(r) : sizes[r];
  };
  std::vector<std::uint64_t> order;
  for (std::uint64_t r = 0; r <= params.r_max; ++r) {
    if (size_of(r) > 0) order.push_back(r);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint64_t a, std::uint64_t b) { return size_of(a) > size_of(b); });

  std::vector<Value> shifted(source.size());
  std::transform(source.begin(), source.end(), shifted.begin(), [&](Value a) { return a + N0; });

  FreePartition out;
  out.gamma = gamma;
  out.delta = delta;
  out.source = source;
  out.params = params;
  for (std::uint64_t r : order) {
    ++out.attempts;
    const std::uint64_t q = size_of(r);
    const std::uint64_t cap = iteration_cap(shifted.size(), q, N);
    std::vector<Value> rest = shifted;
    std::vector<std::vector<Value>> parts;
    for (std::uint64_t it = 0; it < cap && !rest.empty(); ++it) {
      Extraction ex = extract_with(rest, r, params, options, &prefix, q);
      if (ex.free_part.empty()) throw std::logic_error("partition_free: empty extraction");
      parts.push_back(std::move(ex.free_part));
      rest = std::move(ex.rest);
    }
    if (!rest.empty()) continue;
    for (auto& part : parts) {
      for (Value& v : part) v -= N0;
    }
    out.parts = std::move(parts);
    out.r = r;
    out.q_size = q;
    out.cap = cap;
    return out;
  }
  throw std::runtime_error("partition_free: iteration cap exceeded for every r");
}

bool is_free(std::span<const Value> S, std::uint64_t gamma, std::uint64_t delta) {
  const std::unordered_set<Value> members(S.begin(), S.end());
  const WideInt g = static_cast<WideInt>(gamma);
  const WideInt dl = static_cast<WideInt>(delta);
  const WideInt sum = g + dl;
  for (Value a : S) {
    for (Value b : S) {
      if (a == b) continue;
      const WideInt num = g * a + dl * b;
      if (num % sum != 0) continue;
      const WideInt c = num / sum;
      if (c > INT64_MAX || c < INT64_MIN) continue;
      const Value cv = static_cast<Value>(c);
      if (cv != a && cv != b && members.contains(cv)) return false;
    }
  }
  return true;
}

}  // namespace ldt::partition
