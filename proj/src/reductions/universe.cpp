#include <algorithm>
#include <map>
#include <stdexcept>

#include "ldt/reductions.hpp"

namespace ldt {

UniversePlan plan_decrease(const Instance& inst, Ratio c) {
  const Variant& v = inst.variant();
  if (v.parity != Parity::three_partite) throw std::invalid_argument("decrease_universe: source must be 3-partite");
  if (c.num <= 0 || c.den <= 0 || c.num <= c.den) throw std::invalid_argument("decrease_universe: need c > 1");
  for (Value a : v.alpha) {
    if (a == 0) throw std::invalid_argument("decrease_universe: zero coefficient");
  }
  const WideInt U = inst.universe();
  const WideInt a3 = checked_abs(v.alpha[2]);
  WideInt S = 0;
  for (Value a : v.alpha) S += checked_abs(a);

  if (wide_mul(wide_mul(checked_abs(v.t), 2), c.num) > wide_mul(U, c.den)) {
    throw std::invalid_argument("decrease_universe: |t| exceeds U / 2c");
  }
  // Largest multiple of |alpha_3| strictly below U / (2 c S).
  const WideInt k = (wide_mul(U, c.den) - 1) / wide_mul(wide_mul(a3, 2 * c.num), S);
  if (k < 1) throw std::invalid_argument("decrease_universe: U too small, bucket width V < 1");

  UniversePlan plan;
  plan.V = narrow(k * a3, "bucket width");
  plan.target_universe = narrow(wide_mul(U, c.den) / c.num, "universe");
  plan.clip = narrow(wide_mul(U, c.den) / wide_mul(c.num, a3), "clip");
  plan.first_bucket = floor_div(-inst.universe(), plan.V);
  plan.last_bucket = floor_div(inst.universe(), plan.V);
  return plan;
}

ReductionOutput decrease_universe(const Instance& inst, Ratio c) {
  const UniversePlan plan = plan_decrease(inst, c);
  const Coefficients& alpha = inst.variant().alpha;
  const Value V = plan.V;
  const Value step3 = V / alpha[2];  // exact: alpha_3 | V

  // Only nonempty buckets can give a nonempty target.
  std::array<std::map<Value, std::vector<Value>>, 3> buckets;
  for (int i = 0; i < 3; ++i) {
    for (Value x : inst.set(i)) {
      const Value j = floor_div(x, V);
      buckets[i][j].push_back(x - j * V);
    }
  }

  ReductionOutput out;
  const WideInt indices = plan.last_bucket - plan.first_bucket + 1;
  const WideInt all = indices * indices * indices;
  for (const auto& [j1, b1] : buckets[0]) {
    for (const auto& [j2, b2] : buckets[1]) {
      for (const auto& [j3, b3] : buckets[2]) {
        const WideInt lift = wide_mul(step3, static_cast<WideInt>(alpha[0]) * j1 + static_cast<WideInt>(alpha[1]) * j2 +
                                                  static_cast<WideInt>(alpha[2]) * j3);
        std::vector<Value> third;
        for (Value r : b3) {
          const WideInt x = r + lift;
          if (x >= -plan.clip && x <= plan.clip) third.push_back(static_cast<Value>(x));
        }
        if (third.empty()) continue;
        AffineStep step;
        step.offset = {-checked_mul(V, j1), -checked_mul(V, j2),
                       narrow(wide_add(-wide_mul(V, j3), lift), "bucket offset")};
        out.add(Instance(inst.variant(), plan.target_universe, {b1, b2, std::move(third)}), BackMap({step}));
      }
    }
  }
  out.stats.dropped = static_cast<std::uint64_t>(all - static_cast<WideInt>(out.count()));
  return out;
}

}  // namespace ldt
