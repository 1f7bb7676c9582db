#pragma once

// Independent reference implementations used only by the tests.

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "ldt/core.hpp"

namespace oracle {

// Base-b digit check by repeated division, no bit tricks.
inline bool behrend_member(std::uint64_t x, std::uint64_t r, std::uint64_t base, unsigned d, std::uint64_t m) {
  std::uint64_t sum = 0;
  for (unsigned i = 0; i < d; ++i) {
    const std::uint64_t digit = x % base;
    if (digit >= m) return false;
    sum += digit * digit;
    x /= base;
  }
  return x == 0 && sum == r;
}

// Exhaustive scan over all ordered triples of distinct elements.
inline bool has_violation(const std::vector<std::int64_t>& S, std::int64_t gamma, std::int64_t delta) {
  for (std::size_t i = 0; i < S.size(); ++i) {
    for (std::size_t j = 0; j < S.size(); ++j) {
      for (std::size_t k = 0; k < S.size(); ++k) {
        if (i == j || j == k || i == k) continue;
        if (gamma * S[i] + delta * S[j] == (gamma + delta) * S[k]) return true;
      }
    }
  }
  return false;
}

// YES/NO by triple loops written directly from the problem statement.
inline bool solvable(const ldt::Instance& inst) {
  const auto& a = inst.variant().alpha;
  const ldt::WideInt t = inst.variant().t;
  const bool one = inst.variant().parity == ldt::Parity::one_partite;
  const auto& A1 = inst.sets()[0];
  const auto& A2 = inst.sets()[one ? 0 : 1];
  const auto& A3 = inst.sets()[one ? 0 : 2];
  for (auto x : A1) {
    for (auto y : A2) {
      for (auto z : A3) {
        if (one && (x == y || y == z || x == z)) continue;
        if (static_cast<ldt::WideInt>(a[0]) * x + static_cast<ldt::WideInt>(a[1]) * y +
                static_cast<ldt::WideInt>(a[2]) * z ==
            t)
          return true;
      }
    }
  }
  return false;
}

}  // namespace oracle
