#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "ldt/backmap.hpp"
#include "ldt/core.hpp"
#include "ldt/partition.hpp"

namespace ldt {

// ---- bookkeeping -----------------------------------------------------------

struct ReductionStats {
  std::vector<std::size_t> sizes;  // m_i, aligned with targets
  std::uint64_t dropped = 0;       // trivially-NO targets not emitted (size 0)
  bool universe_repaired = true;   // only meaningful for full_chain

  std::size_t total() const;
  std::size_t max() const;
  // sum_i m_i^exponent, e.g. exponent 1.5 for epsilon = 0.5.
  double sum_pow(double exponent) const;
};

struct ReductionOutput {
  std::vector<Instance> targets;
  std::vector<BackMap> maps;
  ReductionStats stats;

  void add(Instance target, BackMap map);
  std::size_t count() const { return targets.size(); }
  // Converts a witness of targets[index] into a witness of the source.
  Witness map_back(std::size_t index, const Witness& target_witness) const;
};

// ---- combinations and gammas -----------------------------------------------

// f(i) for i = 1..3, values in 1..3.
using Combination = std::array<int, 3>;

enum class CombinationClass { allowed, forbidden_constant, forbidden_nonconstant };

CombinationClass classify_combination(const Coefficients& alpha, const Combination& f);

struct ClassifiedCombination {
  Combination f;
  CombinationClass cls;
};

// All 27 maps [3] -> [3] in lexicographic order. Requires nonzero alpha.
std::vector<ClassifiedCombination> enumerate_combinations(const Coefficients& alpha);

struct GammaTriple {
  std::array<Value, 3> gamma{};
  Value s = 0;  // parameter of the line point that was accepted
};

// Smallest s >= 1 with Q(s) = ((1-s) a3, s a3, -((1-s) a1 + s a2)) avoiding
// every non-constant forbidden plane and the coordinate planes.
GammaTriple find_gammas(const Coefficients& alpha);

// ---- 3-partite <-> 3-partite -----------------------------------------------

// An integer triple y with sum alpha_i y_i = rhs: y_1 = u w, y_2 = v w from
// the canonical Bezout pair of (alpha_1, alpha_2), then g12 w + alpha_3 y_3 =
// rhs with |y_3| minimal.
std::array<Value, 3> solve_offsets(const Coefficients& alpha, Value rhs);

// 3LDT(3, alpha, t) -> 3LDT(3, alpha, t_target) by A'_i = A_i + y_i.
ReductionOutput shift_variant(const Instance& inst, Value t_target);

// 3LDT(3, alpha, 0) -> 3LDT(3, beta, 0) by A'_i = (alpha_i q / beta_i) A_i.
ReductionOutput rescale_variant(const Instance& inst, const Coefficients& beta);

// ---- 3-partite -> 1-partite -------------------------------------------------

enum class ThreeToOneCase {
  nonzero_t,           // (a): X = U {C^2 (x - y_i) + C gamma_i + y_i}
  zero_t,              // (b): X = U {C x + gamma_i}
  zero_t_zero_sum,     // (c): partition into (gamma, delta)-free parts first
};

ThreeToOneCase three_to_one_case(const Variant& v);
// The universe of the 1-partite targets produced from a source over [-U, U].
Value three_to_one_universe(const Variant& v, Value U);

struct ThreeToOneOptions {
  partition::ShiftOptions shift{};
};

ReductionOutput reduce_3_to_1(const Instance& inst, const ThreeToOneOptions& options = {});

// ---- 1-partite -> 3-partite -------------------------------------------------

// f(i) = g_w(2 bit_b1(i) + bit_b2(i)), where g_w is injective on [4] \ {w}.
struct ColoringFn {
  unsigned b1 = 0;
  unsigned b2 = 0;
  unsigned w = 0;
  int color(std::size_t index) const;  // in [0, 3)
};

// 4 ceil(log2 n)^2 colourings; every 3-subset of [n] gets three colours under
// at least one of them. Requires n >= 3.
std::vector<ColoringFn> build_color_family(std::size_t n);
std::size_t color_family_bound(std::size_t n);

ReductionOutput reduce_1_to_3(const Instance& inst);

// ---- universe -------------------------------------------------------------

struct Ratio {
  Value num = 2;
  Value den = 1;
};

struct UniversePlan {
  Value V = 0;            // bucket width, a multiple of alpha_3
  Value target_universe;  // floor(U / c)
  Value clip;             // floor(U / (c |alpha_3|)), bound on A'_3
  Value first_bucket;     // floor(-U / V)
  Value last_bucket;      // floor(U / V)
};

// Throws std::invalid_argument when V < 1 or |t| > U / 2c.
UniversePlan plan_decrease(const Instance& inst, Ratio c);

ReductionOutput decrease_universe(const Instance& inst, Ratio c);

// ---- composition ----------------------------------------------------------

ReductionOutput full_chain(const Instance& source, const Variant& target);

}  // namespace ldt
