#include <algorithm>
#include <stdexcept>

#include "ldt/reductions.hpp"

namespace ldt {

namespace {

Value sum_abs(const Coefficients& alpha) {
  Value s = 0;
  for (Value a : alpha) s = checked_add(s, checked_abs(a));
  return s;
}

Value max_abs(const std::array<Value, 3>& v) {
  Value m = 0;
  for (Value x : v) m = std::max(m, checked_abs(x));
  return m;
}

void require_non_trivial(const Variant& v, const char* who) {
  if (!v.non_trivial()) {
    throw std::invalid_argument(std::string(who) + ": variant is trivial (" + to_string(v.classify()) + ")");
  }
}

// The encoding shared by every target of one reduction.
DecodeStep make_encoding(const Variant& v) {
  DecodeStep d;
  d.alpha = v.alpha;
  d.gamma = find_gammas(v.alpha).gamma;
  if (v.t != 0) {
    d.squared = true;
    d.y = solve_offsets(v.alpha, v.t);
    d.C = checked_add(1, checked_mul(std::max(max_abs(d.gamma), max_abs(d.y)), sum_abs(v.alpha)));
  } else {
    d.C = checked_add(1, checked_mul(max_abs(d.gamma), sum_abs(v.alpha)));
  }
  return d;
}

Value encoded_universe(const DecodeStep& d, Value U) {
  if (d.squared) {
    const WideInt C = d.C;
    const WideInt Y = max_abs(d.y);
    return narrow(wide_add(wide_add(wide_mul(C * C, U + Y), wide_mul(C, max_abs(d.gamma))), Y), "universe");
  }
  return narrow(wide_add(wide_mul(d.C, U), max_abs(d.gamma)), "universe");
}

Instance encode_parts(const Variant& v, Value U, const DecodeStep& d,
                      const std::array<std::span<const Value>, 3>& parts) {
  std::vector<Value> X;
  for (int i = 0; i < 3; ++i) {
    for (Value x : parts[i]) X.push_back(d.encode(i, x));
  }
  Variant target = v;
  target.parity = Parity::one_partite;
  return Instance(target, encoded_universe(d, U), {std::move(X)});
}

}  // namespace

ThreeToOneCase three_to_one_case(const Variant& v) {
  if (v.t != 0) return ThreeToOneCase::nonzero_t;
  const WideInt sum = static_cast<WideInt>(v.alpha[0]) + v.alpha[1] + v.alpha[2];
  return sum != 0 ? ThreeToOneCase::zero_t : ThreeToOneCase::zero_t_zero_sum;
}

Value three_to_one_universe(const Variant& v, Value U) {
  require_non_trivial(v, "three_to_one_universe");
  return encoded_universe(make_encoding(v), U);
}

ReductionOutput reduce_3_to_1(const Instance& inst, const ThreeToOneOptions& options) {
  const Variant& v = inst.variant();
  if (v.parity != Parity::three_partite) throw std::invalid_argument("reduce_3_to_1: source must be 3-partite");
  require_non_trivial(v, "reduce_3_to_1");
  const DecodeStep d = make_encoding(v);
  const BackMap map({d});
  ReductionOutput out;

  if (three_to_one_case(v) != ThreeToOneCase::zero_t_zero_sum) {
    out.add(encode_parts(v, inst.universe(), d, {inst.set(0), inst.set(1), inst.set(2)}), map);
    return out;
  }

  // Two coefficients share a sign; they become (gamma, delta) > 0.
  Coefficients a = v.alpha;
  const int negatives = (a[0] < 0) + (a[1] < 0) + (a[2] < 0);
  if (negatives == 2) {
    for (Value& x : a) x = -x;
  }
  std::array<std::uint64_t, 2> gd{};
  int filled = 0;
  for (Value x : a) {
    if (x > 0) gd[filled++] = static_cast<std::uint64_t>(x);
  }

  std::array<std::vector<std::vector<Value>>, 3> parts;
  for (int i = 0; i < 3; ++i) {
    const auto s = inst.set(i);
    if (s.size() < 3) {
      if (!s.empty()) parts[i].emplace_back(s.begin(), s.end());
    } else {
      parts[i] = partition::partition_free(s, gd[0], gd[1], inst.universe(), options.shift).parts;
    }
  }
  const std::uint64_t triples = parts[0].size() * parts[1].size() * parts[2].size();
  if (triples == 0) {
    out.stats.dropped = 1;
    return out;
  }
  for (const auto& p0 : parts[0]) {
    for (const auto& p1 : parts[1]) {
      for (const auto& p2 : parts[2]) out.add(encode_parts(v, inst.universe(), d, {p0, p1, p2}), map);
    }
  }
  return out;
}

}  // namespace ldt
