#include "ldt/core.hpp"

#include <algorithm>
#include <unordered_set>

namespace ldt {

VariantClass classify_variant(const Coefficients& alpha, Value t) {
  for (Value a : alpha) {
    if (a == 0) return VariantClass::trivial_zero_coefficient;
  }
  if (t != 0 && t % gcd3(alpha[0], alpha[1], alpha[2]) != 0) return VariantClass::trivial_gcd;
  return VariantClass::non_trivial;
}

const char* to_string(VariantClass c) {
  switch (c) {
    case VariantClass::non_trivial:
      return "non-trivial";
    case VariantClass::trivial_zero_coefficient:
      return "trivial-zero-coefficient";
    case VariantClass::trivial_gcd:
      return "trivial-gcd";
  }
  return "?";
}

Variant three_sum(Parity parity) { return {parity, {1, 1, 1}, 0}; }
Variant average(Parity parity) { return {parity, {1, 1, -2}, 0}; }

Instance::Instance(Variant variant, Value universe, std::vector<std::vector<Value>> sets)
    : variant_(variant), universe_(universe), sets_(std::move(sets)) {
  if (universe_ < 1) throw InvalidInstance("universe bound must be positive");
  if (sets_.size() != variant_.set_count()) {
    throw InvalidInstance("expected " + std::to_string(variant_.set_count()) + " set(s), got " +
                          std::to_string(sets_.size()));
  }
  for (auto& s : sets_) {
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
      throw InvalidInstance("duplicate element in input set");
    }
    if (!s.empty() && (s.front() < -universe_ || s.back() > universe_)) {
      throw InvalidInstance("element outside [-U, U] with U = " + std::to_string(universe_));
    }
  }
}

std::size_t Instance::size() const {
  std::size_t n = 0;
  for (const auto& s : sets_) n += s.size();
  return n;
}

bool Instance::contains(std::size_t set_index, Value v) const {
  const auto& s = sets_.at(set_index);
  return std::binary_search(s.begin(), s.end(), v);
}

WideInt evaluate(const Coefficients& alpha, const std::array<Value, 3>& x) {
  WideInt sum = 0;
  for (int i = 0; i < 3; ++i) sum += static_cast<WideInt>(alpha[i]) * x[i];
  return sum;
}

bool verify_witness(const Instance& inst, const Witness& w) {
  const Variant& var = inst.variant();
  if (evaluate(var.alpha, w.values) != var.t) return false;
  if (var.parity == Parity::one_partite) {
    if (w.origins != std::array<int, 3>{1, 1, 1}) return false;
    if (w.values[0] == w.values[1] || w.values[0] == w.values[2] || w.values[1] == w.values[2]) {
      return false;
    }
    for (Value v : w.values) {
      if (!inst.contains(0, v)) return false;
    }
    return true;
  }
  if (w.origins != std::array<int, 3>{1, 2, 3}) return false;
  for (std::size_t i = 0; i < 3; ++i) {
    if (!inst.contains(i, w.values[i])) return false;
  }
  return true;
}

namespace {

Witness make_witness(const Instance& inst, Value x1, Value x2, Value x3) {
  Witness w;
  w.values = {x1, x2, x3};
  w.origins = inst.variant().parity == Parity::one_partite ? std::array<int, 3>{1, 1, 1}
                                                           : std::array<int, 3>{1, 2, 3};
  return w;
}

std::span<const Value> slot_set(const Instance& inst, int slot) {
  return inst.variant().parity == Parity::one_partite ? inst.set(0) : inst.set(slot);
}

}  // namespace

std::optional<Witness> solve_brute_force(const Instance& inst) {
  const Variant& var = inst.variant();
  const bool one = var.parity == Parity::one_partite;
  const auto s1 = slot_set(inst, 0), s2 = slot_set(inst, 1), s3 = slot_set(inst, 2);
  for (std::size_t i = 0; i < s1.size(); ++i) {
    for (std::size_t j = 0; j < s2.size(); ++j) {
      if (one && j == i) continue;
      const WideInt partial = static_cast<WideInt>(var.alpha[0]) * s1[i] +
                              static_cast<WideInt>(var.alpha[1]) * s2[j];
      for (std::size_t k = 0; k < s3.size(); ++k) {
        if (one && (k == i || k == j)) continue;
        if (partial + static_cast<WideInt>(var.alpha[2]) * s3[k] == var.t) {
          return make_witness(inst, s1[i], s2[j], s3[k]);
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<Witness> solve_quadratic(const Instance& inst) {
  const Variant& var = inst.variant();
  if (!var.non_trivial()) {
    throw std::invalid_argument(std::string("solve_quadratic needs a non-trivial variant, got ") +
                                to_string(var.classify()));
  }
  const bool one = var.parity == Parity::one_partite;
  const auto s1 = slot_set(inst, 0), s2 = slot_set(inst, 1), s3 = slot_set(inst, 2);
  const std::unordered_set<Value> index(s3.begin(), s3.end());
  const WideInt a3 = var.alpha[2];
  for (Value x1 : s1) {
    const WideInt rest = static_cast<WideInt>(var.t) - static_cast<WideInt>(var.alpha[0]) * x1;
    for (Value x2 : s2) {
      if (one && x2 == x1) continue;
      const WideInt rhs = rest - static_cast<WideInt>(var.alpha[1]) * x2;
      if (rhs % a3 != 0) continue;
      const WideInt q = rhs / a3;
      if (q > INT64_MAX || q < INT64_MIN) continue;
      const Value x3 = static_cast<Value>(q);
      if (one && (x3 == x1 || x3 == x2)) continue;
      if (index.contains(x3)) return make_witness(inst, x1, x2, x3);
    }
  }
  return std::nullopt;
}

namespace {

struct Keyed {
  WideInt key;
  Value value;
};

// Elements of s ordered by alpha * x ascending.
std::vector<Keyed> keyed_ascending(std::span<const Value> s, Value alpha) {
  std::vector<Keyed> out;
  out.reserve(s.size());
  for (Value v : s) out.push_back({static_cast<WideInt>(alpha) * v, v});
  if (alpha < 0) std::reverse(out.begin(), out.end());
  return out;
}

// Smallest `count` elements of s that avoid `used`, or nullopt.
std::optional<std::vector<Value>> fill_distinct(std::span<const Value> s,
                                                std::initializer_list<Value> used,
                                                std::size_t count) {
  std::vector<Value> out;
  for (Value v : s) {
    if (out.size() == count) break;
    if (std::find(used.begin(), used.end(), v) != used.end()) continue;
    out.push_back(v);
  }
  if (out.size() < count) return std::nullopt;
  return out;
}

}  // namespace

std::optional<Witness> solve_pair(const Instance& inst) {
  const Variant& var = inst.variant();
  std::vector<int> free_slots, zero_slots;
  for (int i = 0; i < 3; ++i) (var.alpha[i] == 0 ? zero_slots : free_slots).push_back(i);
  if (zero_slots.empty()) throw std::invalid_argument("solve_pair needs a zero coefficient");

  const bool one = var.parity == Parity::one_partite;
  if (one && inst.set(0).size() < 3) return std::nullopt;
  for (int slot = 0; slot < 3; ++slot) {
    if (slot_set(inst, slot).empty()) return std::nullopt;
  }

  std::array<Value, 3> x{};
  auto finish = [&](std::initializer_list<Value> used) -> std::optional<Witness> {
    if (one) {
      auto extra = fill_distinct(inst.set(0), used, zero_slots.size());
      if (!extra) return std::nullopt;
      for (std::size_t i = 0; i < zero_slots.size(); ++i) x[zero_slots[i]] = (*extra)[i];
    } else {
      for (int slot : zero_slots) x[slot] = inst.set(slot).front();
    }
    return make_witness(inst, x[0], x[1], x[2]);
  };

  if (free_slots.empty()) {
    if (var.t != 0) return std::nullopt;
    return finish({});
  }

  if (free_slots.size() == 1) {
    const int j = free_slots[0];
    const Value a = var.alpha[j];
    if (var.t % a != 0) return std::nullopt;
    const Value v = var.t / a;
    const auto s = slot_set(inst, j);
    if (!std::binary_search(s.begin(), s.end(), v)) return std::nullopt;
    x[j] = v;
    return finish({v});
  }

  const int j = free_slots[0], k = free_slots[1];
  const auto lj = keyed_ascending(slot_set(inst, j), var.alpha[j]);
  const auto lk = keyed_ascending(slot_set(inst, k), var.alpha[k]);
  std::size_t i = 0;
  std::size_t p = lk.size();
  while (i < lj.size() && p > 0) {
    const WideInt sum = lj[i].key + lk[p - 1].key;
    if (sum < var.t) {
      ++i;
    } else if (sum > var.t) {
      --p;
    } else {
      // For a fixed i the partner is unique (keys strictly monotone).
      if (one && lj[i].value == lk[p - 1].value) {
        ++i;
        continue;
      }
      x[j] = lj[i].value;
      x[k] = lk[p - 1].value;
      return finish({x[j], x[k]});
    }
  }
  return std::nullopt;
}

}  // namespace ldt
