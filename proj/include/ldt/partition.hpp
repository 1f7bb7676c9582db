#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ldt/arith.hpp"
#include "ldt/behrend.hpp"

namespace ldt::partition {

// How find_shift evaluates |Q_r ∩ [x, x + 2^k)|.
enum class CountMethod {
  carry_dp,      // behrend::q_count_range, the carry dynamic program
  prefix_table,  // behrend::PrefixCounter
};

struct ShiftOptions {
  CountMethod method = CountMethod::prefix_table;
  // Evaluate both branch expectations directly at every bit and check
  // E_k = (E_k-1[bit 0] + E_k-1[bit 1]) / 2 exactly.
  bool audit = false;
  // Record the expectation numerators (denominator 2^k) per step.
  bool trace = false;
};

struct ShiftStep {
  unsigned k;            // expectation is over a window of 2^k shifts
  std::uint64_t numer;   // E = numer / 2^k
};

struct ShiftResult {
  Value delta = 0;             // in [-N+1, N-1]
  std::uint64_t hit_count = 0; // |(Q_r + delta) ∩ A|
  std::vector<ShiftStep> steps;
};

// Method of conditional expectations over the bits of the shift, most
// significant first. A must be nonempty, inside [-N+1, N-1], and |Q_r| >= 1.
// For A inside [0, N) the result satisfies hit_count * 2N >= |A| * |Q_r|.
ShiftResult find_shift(std::span<const Value> A, std::uint64_t r, const behrend::Params& params,
                       const ShiftOptions& options = {});

struct Extraction {
  std::vector<Value> free_part;  // A ∩ (Q_r + delta)
  std::vector<Value> rest;       // A \ free_part
  Value delta = 0;
};

Extraction extract_free_subset(std::span<const Value> A, std::uint64_t r,
                               const behrend::Params& params, const ShiftOptions& options = {});

struct FreePartition {
  std::vector<std::vector<Value>> parts;
  std::uint64_t gamma = 0;
  std::uint64_t delta = 0;
  std::vector<Value> source;
  // Bookkeeping of the successful attempt.
  std::uint64_t r = 0;
  std::uint64_t q_size = 0;
  std::uint64_t cap = 0;
  std::uint64_t attempts = 0;  // how many r were tried
  behrend::Params params;
};

// Partitions A (a set inside [-N0, N0]) into (gamma, delta)-free parts.
// N0 defaults to max |a|.
FreePartition partition_free(std::span<const Value> A, std::uint64_t gamma, std::uint64_t delta,
                             std::optional<Value> universe = std::nullopt,
                             const ShiftOptions& options = {});

// ceil(ln|A| / -ln(1 - q/(2N))) + 1.
std::uint64_t iteration_cap(std::size_t set_size, std::uint64_t q, std::uint64_t N);

// No distinct a, b, c in S with gamma a + delta b = (gamma + delta) c.
bool is_free(std::span<const Value> S, std::uint64_t gamma, std::uint64_t delta);

}  // namespace ldt::partition
