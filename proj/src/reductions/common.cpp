#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ldt/reductions.hpp"

namespace ldt {

std::size_t ReductionStats::total() const { return std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}); }

std::size_t ReductionStats::max() const {
  return sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
}

double ReductionStats::sum_pow(double exponent) const {
  double total = 0;
  for (std::size_t m : sizes) total += std::pow(static_cast<double>(m), exponent);
  return total;
}

void ReductionOutput::add(Instance target, BackMap map) {
  stats.sizes.push_back(target.size());
  targets.push_back(std::move(target));
  maps.push_back(std::move(map));
}

Witness ReductionOutput::map_back(std::size_t index, const Witness& target_witness) const {
  return maps.at(index).apply(target_witness);
}

CombinationClass classify_combination(const Coefficients& alpha, const Combination& f) {
  if (f[0] == f[1] && f[1] == f[2]) return CombinationClass::forbidden_constant;
  for (int i = 0; i < 3; ++i) {
    // {f(x) : alpha_x = alpha_i} must equal {x : alpha_x = alpha_i}.
    std::array<bool, 3> image{false, false, false};
    std::array<bool, 3> cls{false, false, false};
    for (int x = 0; x < 3; ++x) {
      if (alpha[x] == alpha[i]) {
        image[f[x] - 1] = true;
        cls[x] = true;
      }
    }
    if (image != cls) return CombinationClass::forbidden_nonconstant;
  }
  return CombinationClass::allowed;
}

std::vector<ClassifiedCombination> enumerate_combinations(const Coefficients& alpha) {
  for (Value a : alpha) {
    if (a == 0) throw std::invalid_argument("enumerate_combinations: zero coefficient");
  }
  std::vector<ClassifiedCombination> out;
  out.reserve(27);
  for (int a = 1; a <= 3; ++a) {
    for (int b = 1; b <= 3; ++b) {
      for (int c = 1; c <= 3; ++c) {
        const Combination f{a, b, c};
        out.push_back({f, classify_combination(alpha, f)});
      }
    }
  }
  return out;
}

GammaTriple find_gammas(const Coefficients& alpha) {
  for (Value a : alpha) {
    if (a == 0) throw std::invalid_argument("find_gammas: zero coefficient");
  }
  const auto combos = enumerate_combinations(alpha);
  // At most 27 + 3 planes meet the line once each, so s <= 31 always works.
  for (Value s = 1; s <= 64; ++s) {
    const std::array<Value, 3> g{
        checked_mul(1 - s, alpha[2]), checked_mul(s, alpha[2]),
        -checked_add(checked_mul(1 - s, alpha[0]), checked_mul(s, alpha[1]))};
    if (g[0] == 0 || g[1] == 0 || g[2] == 0) continue;
    bool ok = true;
    for (const auto& [f, cls] : combos) {
      if (cls != CombinationClass::forbidden_nonconstant) continue;
      WideInt sum = 0;
      for (int i = 0; i < 3; ++i) sum += static_cast<WideInt>(alpha[i]) * g[f[i] - 1];
      if (sum == 0) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    if (evaluate(alpha, g) != 0) throw std::logic_error("find_gammas: point left the plane");
    if (g[0] == g[1] || g[0] == g[2] || g[1] == g[2]) throw std::logic_error("find_gammas: repeated gamma");
    return {g, s};
  }
  throw std::logic_error("find_gammas: no admissible point on the line");
}

std::array<Value, 3> solve_offsets(const Coefficients& alpha, Value rhs) {
  if (rhs == 0) return {0, 0, 0};
  if (alpha[0] == 0 && alpha[1] == 0) throw std::invalid_argument("solve_offsets: alpha_1 = alpha_2 = 0");
  const Bezout b12 = bezout(alpha[0], alpha[1]);
  const Bezout b = bezout(b12.g, alpha[2]);
  if (rhs % b.g != 0) {
    throw std::invalid_argument("solve_offsets: gcd(alpha) = " + std::to_string(b.g) + " does not divide " +
                                std::to_string(rhs));
  }
  const WideInt scale = rhs / b.g;
  WideInt w = wide_mul(b.u, scale);
  WideInt y3 = wide_mul(b.v, scale);
  // y3 + k g12/g, w - k alpha_3/g: move y3 into (-step/2, step/2].
  const WideInt step = b12.g / b.g;
  WideInt centred = ((y3 % step) + step) % step;
  if (2 * centred > step) centred -= step;
  const WideInt k = (centred - y3) / step;
  y3 = centred;
  w = wide_add(w, -wide_mul(k, alpha[2] / b.g));
  const std::array<Value, 3> y{narrow(wide_mul(b12.u, w), "offset"), narrow(wide_mul(b12.v, w), "offset"),
                               narrow(y3, "offset")};
  if (evaluate(alpha, y) != rhs) throw std::logic_error("solve_offsets: identity failed");
  return y;
}

}  // namespace ldt
