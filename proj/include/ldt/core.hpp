#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ldt/arith.hpp"

namespace ldt {

enum class Parity : int { one_partite = 1, three_partite = 3 };

enum class VariantClass { non_trivial, trivial_zero_coefficient, trivial_gcd };

using Coefficients = std::array<Value, 3>;

VariantClass classify_variant(const Coefficients& alpha, Value t);
const char* to_string(VariantClass c);

struct Variant {
  Parity parity = Parity::three_partite;
  Coefficients alpha{1, 1, 1};
  Value t = 0;

  VariantClass classify() const { return classify_variant(alpha, t); }
  bool non_trivial() const { return classify() == VariantClass::non_trivial; }
  std::size_t set_count() const { return parity == Parity::one_partite ? 1 : 3; }
  friend bool operator==(const Variant&, const Variant&) = default;
};

// 3-SUM and AVERAGE, the two named 1-partite variants.
Variant three_sum(Parity parity = Parity::one_partite);
Variant average(Parity parity = Parity::one_partite);

class InvalidInstance : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A variant with its input sets over [-U, U]. Sets are canonicalized to
// strictly increasing order; duplicates and out-of-universe values are
// rejected.
class Instance {
 public:
  Instance(Variant variant, Value universe, std::vector<std::vector<Value>> sets);

  const Variant& variant() const { return variant_; }
  Value universe() const { return universe_; }
  std::size_t set_count() const { return sets_.size(); }
  std::span<const Value> set(std::size_t i) const { return sets_.at(i); }
  const std::vector<std::vector<Value>>& sets() const { return sets_; }
  // Total number of elements over all sets (the size measure m).
  std::size_t size() const;
  bool contains(std::size_t set_index, Value v) const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  Variant variant_;
  Value universe_;
  std::vector<std::vector<Value>> sets_;
};

// origins are 1-based set indices, (1,1,1) for 1-partite instances.
struct Witness {
  std::array<Value, 3> values{};
  std::array<int, 3> origins{1, 2, 3};
  friend bool operator==(const Witness&, const Witness&) = default;
};

WideInt evaluate(const Coefficients& alpha, const std::array<Value, 3>& x);

bool verify_witness(const Instance& inst, const Witness& w);

// Exhaustive O(n^3); returns the lexicographically smallest value triple.
std::optional<Witness> solve_brute_force(const Instance& inst);

// Hash-indexed O(n^2) solver; requires a non-trivial variant.
std::optional<Witness> solve_quadratic(const Instance& inst);

// Zero-coefficient variants: sort + two pointers on the residual equation.
std::optional<Witness> solve_pair(const Instance& inst);

}  // namespace ldt
