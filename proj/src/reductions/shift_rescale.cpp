#include <algorithm>
#include <stdexcept>

#include "ldt/reductions.hpp"

namespace ldt {

namespace {

void require_three_partite_nonzero(const Instance& inst, const char* who) {
  if (inst.variant().parity != Parity::three_partite) {
    throw std::invalid_argument(std::string(who) + ": source must be 3-partite");
  }
  for (Value a : inst.variant().alpha) {
    if (a == 0) throw std::invalid_argument(std::string(who) + ": zero coefficient");
  }
}

}  // namespace

ReductionOutput shift_variant(const Instance& inst, Value t_target) {
  require_three_partite_nonzero(inst, "shift_variant");
  const Variant& src = inst.variant();
  const std::array<Value, 3> y = solve_offsets(src.alpha, checked_sub(t_target, src.t));

  Value max_shift = 0;
  std::vector<std::vector<Value>> sets(3);
  for (int i = 0; i < 3; ++i) {
    max_shift = std::max(max_shift, checked_abs(y[i]));
    for (Value x : inst.set(i)) sets[i].push_back(checked_add(x, y[i]));
  }
  Variant var = src;
  var.t = t_target;

  ReductionOutput out;
  AffineStep step;
  step.offset = y;
  out.add(Instance(var, checked_add(inst.universe(), max_shift), std::move(sets)),
          y == std::array<Value, 3>{0, 0, 0} ? BackMap() : BackMap({step}));
  return out;
}

ReductionOutput rescale_variant(const Instance& inst, const Coefficients& beta) {
  require_three_partite_nonzero(inst, "rescale_variant");
  const Variant& src = inst.variant();
  if (src.t != 0) throw std::invalid_argument("rescale_variant: source must have t = 0");
  for (Value b : beta) {
    if (b == 0) throw std::invalid_argument("rescale_variant: zero target coefficient");
  }
  const Value q = lcm(lcm(beta[0], beta[1]), beta[2]);

  AffineStep step;
  Value max_factor = 0;
  std::vector<std::vector<Value>> sets(3);
  for (int i = 0; i < 3; ++i) {
    step.scale[i] = checked_mul(src.alpha[i], q / beta[i]);
    max_factor = std::max(max_factor, checked_abs(step.scale[i]));
    for (Value x : inst.set(i)) sets[i].push_back(checked_mul(x, step.scale[i]));
  }
  ReductionOutput out;
  out.add(Instance(Variant{Parity::three_partite, beta, 0}, checked_mul(inst.universe(), max_factor),
                   std::move(sets)),
          step.scale == std::array<Value, 3>{1, 1, 1} ? BackMap() : BackMap({step}));
  return out;
}

}  // namespace ldt
