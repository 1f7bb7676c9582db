#pragma once

#include <array>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ldt/core.hpp"

namespace ldt {

// 3-partite -> 3-partite: target_i = scale_i * source_i + offset_i.
struct AffineStep {
  std::array<Value, 3> scale{1, 1, 1};
  std::array<Value, 3> offset{0, 0, 0};
  friend bool operator==(const AffineStep&, const AffineStep&) = default;
};

// 1-partite source split into three disjoint colour classes: values are
// unchanged, origins collapse to (1,1,1).
struct CollapseStep {
  friend bool operator==(const CollapseStep&, const CollapseStep&) = default;
};

// 3-partite source merged into one set of encoded values. An element x of
// A_i is encoded as
//   squared: C^2 (x - y_i) + C gamma_i + y_i
//   plain:   C x + gamma_i
// alpha is the shared coefficient vector, used to check that the decoded
// combination is allowed.
struct DecodeStep {
  Coefficients alpha{};
  Value C = 0;
  bool squared = false;
  std::array<Value, 3> gamma{};
  std::array<Value, 3> y{};
  friend bool operator==(const DecodeStep&, const DecodeStep&) = default;

  Value encode(int origin, Value x) const;  // origin in [0, 3)
  // (origin in [0, 3), x); throws if z does not decode.
  std::pair<int, Value> decode(Value z) const;
};

using MapStep = std::variant<AffineStep, CollapseStep, DecodeStep>;

class MapBackError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Steps ordered from the target side to the source side.
class BackMap {
 public:
  BackMap() = default;
  explicit BackMap(std::vector<MapStep> steps) : steps_(std::move(steps)) {}

  const std::vector<MapStep>& steps() const { return steps_; }
  bool identity() const { return steps_.empty(); }

  Witness apply(const Witness& target_witness) const;

  // child maps a grandchild target to this map's target; result maps the
  // grandchild straight to this map's source. Adjacent affine steps merge.
  static BackMap compose(const BackMap& child, const BackMap& parent);

  friend bool operator==(const BackMap&, const BackMap&) = default;

 private:
  std::vector<MapStep> steps_;
};

std::string format_backmap(const BackMap& map);
BackMap parse_backmap(std::string_view text);

}  // namespace ldt
