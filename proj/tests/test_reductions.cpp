#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "ldt/campaign.hpp"
#include "ldt/reductions.hpp"
#include "oracles.hpp"

using namespace ldt;

namespace {

Instance three(Coefficients a, Value t, std::vector<Value> A1, std::vector<Value> A2, std::vector<Value> A3,
               Value U = 100) {
  return Instance(Variant{Parity::three_partite, a, t}, U, {std::move(A1), std::move(A2), std::move(A3)});
}

// Completeness and soundness against the triple-loop oracle: the source is
// YES iff some target is, and every target solution maps back to a source
// solution.
void check_reduction(const Instance& source, const ReductionOutput& out) {
  REQUIRE(out.targets.size() == out.maps.size());
  REQUIRE(out.stats.sizes.size() == out.targets.size());
  bool any = false;
  for (std::size_t i = 0; i < out.count(); ++i) {
    CHECK(out.stats.sizes[i] == out.targets[i].size());
    const auto w = solve_brute_force(out.targets[i]);
    CHECK(w.has_value() == oracle::solvable(out.targets[i]));
    if (!w) continue;
    any = true;
    const Witness back = out.map_back(i, *w);
    CHECK(verify_witness(source, back));
  }
  CHECK(any == oracle::solvable(source));
}

double size_budget(std::size_t n) {
  const double lg = std::log2(static_cast<double>(std::max<std::size_t>(n, 2)));
  return 64.0 * static_cast<double>(n) * (1 + lg) * (1 + lg);
}

// Checks sum alpha_i gamma_f(i) for every combination against its class.
void check_gammas(const Coefficients& alpha, const std::array<Value, 3>& g) {
  for (Value x : g) CHECK(x != 0);
  int allowed = 0;
  for (int a = 1; a <= 3; ++a) {
    for (int b = 1; b <= 3; ++b) {
      for (int c = 1; c <= 3; ++c) {
        const Combination f{a, b, c};
        const Value s = alpha[0] * g[a - 1] + alpha[1] * g[b - 1] + alpha[2] * g[c - 1];
        const bool constant = a == b && b == c;
        // f is allowed iff it maps every coefficient class onto itself
        bool keeps = true;
        for (int i = 0; i < 3; ++i) {
          std::set<int> cls, image;
          for (int x = 0; x < 3; ++x) {
            if (alpha[x] == alpha[i]) {
              cls.insert(x);
              image.insert(f[x] - 1);
            }
          }
          keeps = keeps && cls == image;
        }
        if (keeps) {
          ++allowed;
          CHECK(s == 0);
        } else if (!constant) {
          CHECK(s != 0);
        }
      }
    }
  }
  CHECK(allowed >= 1);
}

}  // namespace

TEST_CASE("combination classes") {
  auto count = [](const Coefficients& a, CombinationClass c) {
    const auto all = enumerate_combinations(a);
    CHECK(all.size() == 27);
    return std::count_if(all.begin(), all.end(), [&](const ClassifiedCombination& x) { return x.cls == c; });
  };
  CHECK(count({1, 1, 1}, CombinationClass::allowed) == 6);
  CHECK(count({1, 1, 1}, CombinationClass::forbidden_constant) == 3);
  CHECK(count({1, 1, 1}, CombinationClass::forbidden_nonconstant) == 18);

  std::vector<Combination> allowed;
  for (const auto& c : enumerate_combinations({1, 1, -2})) {
    if (c.cls == CombinationClass::allowed) allowed.push_back(c.f);
  }
  CHECK(allowed == std::vector<Combination>{{1, 2, 3}, {2, 1, 3}});

  CHECK(count({1, 2, 3}, CombinationClass::allowed) == 1);
  CHECK(classify_combination({1, 2, 3}, {1, 2, 3}) == CombinationClass::allowed);
  CHECK(classify_combination({1, 2, 3}, {2, 2, 2}) == CombinationClass::forbidden_constant);
  CHECK(classify_combination({1, 2, 3}, {1, 1, 3}) == CombinationClass::forbidden_nonconstant);
  CHECK_THROWS(enumerate_combinations({0, 1, 1}));
}

TEST_CASE("gammas") {
  const GammaTriple g = find_gammas({1, 1, 1});
  CHECK(g.s == 3);
  CHECK(g.gamma == std::array<Value, 3>{-2, 3, -1});
  check_gammas({1, 1, 1}, g.gamma);

  const GammaTriple h = find_gammas({1, 1, -2});
  CHECK(h.gamma[0] + h.gamma[1] - 2 * h.gamma[2] == 0);
  check_gammas({1, 1, -2}, h.gamma);

  for (Value a = -4; a <= 4; ++a) {
    for (Value b = -4; b <= 4; ++b) {
      for (Value c = -4; c <= 4; ++c) {
        if (a == 0 || b == 0 || c == 0) continue;
        const GammaTriple x = find_gammas({a, b, c});
        INFO(a, " ", b, " ", c);
        CHECK(a * x.gamma[0] + b * x.gamma[1] + c * x.gamma[2] == 0);
        CHECK(x.s <= 31);
        CHECK(x.gamma[0] == (1 - x.s) * c);
        CHECK(x.gamma[1] == x.s * c);
        check_gammas({a, b, c}, x.gamma);
      }
    }
  }
  CHECK_THROWS(find_gammas({1, 0, 1}));
}

TEST_CASE("offsets") {
  CHECK(solve_offsets({1, 1, 1}, 3) == std::array<Value, 3>{3, 0, 0});
  const auto y = solve_offsets({2, 3, 5}, 1);
  CHECK(2 * y[0] + 3 * y[1] + 5 * y[2] == 1);
  CHECK(y == std::array<Value, 3>{-1, 1, 0});
  CHECK(solve_offsets({2, 3, 5}, 0) == std::array<Value, 3>{0, 0, 0});
  CHECK_THROWS(solve_offsets({2, 4, 6}, 3));
  for (Value a = -6; a <= 6; ++a) {
    for (Value b = -6; b <= 6; ++b) {
      for (Value c = -6; c <= 6; ++c) {
        if (a == 0 || b == 0 || c == 0) continue;
        const Value g = gcd3(a, b, c);
        for (Value rhs = -20 * g; rhs <= 20 * g; rhs += g) {
          const auto z = solve_offsets({a, b, c}, rhs);
          CHECK(a * z[0] + b * z[1] + c * z[2] == rhs);
          // y3 is centred: |y3| <= g12 / (2g)
          CHECK(2 * std::abs(z[2]) * g <= gcd(a, b));
        }
      }
    }
  }
}

TEST_CASE("shift example") {
  const Instance src = three({1, 1, 1}, 0, {1, 5}, {2}, {-3});
  const ReductionOutput out = shift_variant(src, 3);
  REQUIRE(out.count() == 1);
  const Instance& t = out.targets[0];
  CHECK(t.variant().t == 3);
  CHECK(std::vector<Value>(t.set(0).begin(), t.set(0).end()) == std::vector<Value>{4, 8});
  CHECK(std::vector<Value>(t.set(1).begin(), t.set(1).end()) == std::vector<Value>{2});
  CHECK(t.universe() == 103);
  check_reduction(src, out);

  const ReductionOutput same = shift_variant(src, 0);
  CHECK(same.targets[0] == src);
  CHECK(same.maps[0].identity());
}

TEST_CASE("rescale examples") {
  const Instance avg = three({1, 1, -2}, 0, {1, 4}, {5}, {3, 2});
  const ReductionOutput a = rescale_variant(avg, {1, 1, 1});
  const Instance& t = a.targets[0];
  CHECK(t.variant().alpha == Coefficients{1, 1, 1});
  CHECK(std::vector<Value>(t.set(2).begin(), t.set(2).end()) == std::vector<Value>{-6, -4});
  CHECK(t.universe() == 200);
  check_reduction(avg, a);

  const Instance s = three({1, 1, 1}, 0, {1}, {2}, {-3});
  const ReductionOutput b = rescale_variant(s, {2, 2, 2});
  CHECK(b.targets[0].sets() == s.sets());
  CHECK(b.maps[0].identity());

  const ReductionOutput c = rescale_variant(three({2, 3, 5}, 0, {5}, {-5}, {1}), {2, 3, 5});
  // q = 30: every set scaled by 30
  CHECK(c.targets[0].set(0)[0] == 150);
  CHECK_THROWS(rescale_variant(three({1, 1, 1}, 3, {1}, {1}, {1}), {1, 1, -2}));
}

TEST_CASE("3-partite to 1-partite example") {
  const Instance src = three({1, 1, 1}, 0, {1}, {2}, {-3});
  const ReductionOutput out = reduce_3_to_1(src);
  REQUIRE(out.count() == 1);
  const Instance& X = out.targets[0];
  CHECK(X.variant() == three_sum());
  CHECK(std::vector<Value>(X.set(0).begin(), X.set(0).end()) == std::vector<Value>{-31, 8, 23});
  const auto w = solve_brute_force(X);
  REQUIRE(w);
  const Witness back = out.map_back(0, *w);
  CHECK(back.values == std::array<Value, 3>{1, 2, -3});
  CHECK(back.origins == std::array<int, 3>{1, 2, 3});
  const auto& d = std::get<DecodeStep>(out.maps[0].steps()[0]);
  CHECK(d.C == 10);
  CHECK_FALSE(d.squared);
  CHECK(three_to_one_case(src.variant()) == ThreeToOneCase::zero_t);
}

TEST_CASE("3-partite to 1-partite with t != 0 uses the squared encoding") {
  const Instance src = three({2, 3, 5}, 1, {1, -4}, {3}, {-2, 7});
  CHECK(three_to_one_case(src.variant()) == ThreeToOneCase::nonzero_t);
  const ReductionOutput out = reduce_3_to_1(src);
  const auto& d = std::get<DecodeStep>(out.maps[0].steps()[0]);
  CHECK(d.squared);
  CHECK(2 * d.y[0] + 3 * d.y[1] + 5 * d.y[2] == 1);
  for (int i = 0; i < 3; ++i) {
    for (Value x = -50; x <= 50; ++x) CHECK(d.decode(d.encode(i, x)) == std::pair<int, Value>{i, x});
  }
  check_reduction(src, out);
}

TEST_CASE("zero-sum case splits into free parts") {
  Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const Instance src = campaign::generate_instance(average(Parity::three_partite),
                                                     static_cast<std::size_t>(rng.uniform(3, 15)), 300,
                                                     campaign::GenMode::random, rng);
    const ReductionOutput out = reduce_3_to_1(src);
    for (std::size_t i = 0; i < out.count(); ++i) {
      const auto& d = std::get<DecodeStep>(out.maps[i].steps()[0]);
      std::array<std::vector<Value>, 3> by_origin;
      for (Value z : out.targets[i].set(0)) {
        const auto [o, x] = d.decode(z);
        by_origin[o].push_back(x);
        CHECK(src.contains(o, x));
      }
      for (const auto& part : by_origin) CHECK_FALSE(oracle::has_violation(part, 1, 1));
    }
    check_reduction(src, out);
  }
  // Two negative coefficients get normalized: (-1,-1,2) behaves like (1,1,-2).
  const Instance neg = three({-1, -1, 2}, 0, {1, 2, 3, 4, 5}, {1, 2, 3, 4, 5}, {1, 2, 3, 4, 5}, 10);
  check_reduction(neg, reduce_3_to_1(neg));
}

TEST_CASE("3-partite to 1-partite agrees with the oracle") {
  Rng rng(41);
  const std::vector<Coefficients> alphas = {{1, 1, 1}, {1, 1, -2}, {2, 3, 5}, {1, -3, 2}, {3, 3, -1}, {2, -4, 6}};
  for (int trial = 0; trial < 180; ++trial) {
    Variant v{Parity::three_partite, alphas[trial % alphas.size()], 0};
    if (trial % 2) v.t = gcd3(v.alpha[0], v.alpha[1], v.alpha[2]) * rng.uniform(-6, 6);
    const auto n = static_cast<std::size_t>(rng.uniform(3, 24));
    const auto mode = trial % 3 == 0 ? campaign::GenMode::planted_yes : campaign::GenMode::random;
    const Instance src = campaign::generate_instance(v, n, rng.uniform(10, 80), mode, rng);
    const ReductionOutput out = reduce_3_to_1(src);
    INFO(trial);
    check_reduction(src, out);
    CHECK(static_cast<double>(out.stats.total()) <= size_budget(n));
    for (const auto& t : out.targets) CHECK(t.universe() == three_to_one_universe(v, src.universe()));
  }
  CHECK_THROWS(reduce_3_to_1(three({0, 1, 1}, 0, {1}, {1}, {1})));
  CHECK_THROWS(reduce_3_to_1(three({2, 2, 2}, 1, {1}, {1}, {1})));
}

TEST_CASE("colour family") {
  for (std::size_t n : {3u, 5u, 8u, 16u, 64u}) {
    const auto F = build_color_family(n);
    const std::size_t L = static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(n))));
    CHECK(F.size() <= 4 * L * L);
    CHECK(F.size() == color_family_bound(n));
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        for (std::size_t c = b + 1; c < n; ++c) {
          bool separated = false;
          for (const auto& f : F) {
            const int x = f.color(a), y = f.color(b), z = f.color(c);
            if (x != y && y != z && x != z) {
              separated = true;
              break;
            }
          }
          CHECK(separated);
        }
      }
    }
    for (const auto& f : F) {
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(f.color(i) >= 0);
        CHECK(f.color(i) < 3);
      }
    }
  }
  CHECK_THROWS(build_color_family(2));
}

TEST_CASE("1-partite to 3-partite") {
  const Instance tiny(three_sum(), 10, {{-3, 1, 2}});
  const ReductionOutput out = reduce_1_to_3(tiny);
  bool singletons = false;
  for (const auto& t : out.targets) {
    singletons = singletons || (t.set(0).size() == 1 && t.set(1).size() == 1 && t.set(2).size() == 1);
    CHECK(t.variant() == three_sum(Parity::three_partite));
  }
  CHECK(singletons);
  check_reduction(tiny, out);
  CHECK(out.count() + out.stats.dropped == 6 * color_family_bound(3));

  CHECK(reduce_1_to_3(Instance(three_sum(), 10, {{1, 2}})).count() == 0);

  Rng rng(51);
  const std::vector<Coefficients> alphas = {{1, 1, 1}, {1, 1, -2}, {2, 3, 5}, {1, -1, 3}, {2, 2, 2}};
  for (int trial = 0; trial < 120; ++trial) {
    Variant v{Parity::one_partite, alphas[trial % alphas.size()], 0};
    v.t = gcd3(v.alpha[0], v.alpha[1], v.alpha[2]) * rng.uniform(-4, 4);
    const auto n = static_cast<std::size_t>(rng.uniform(3, 24));
    const auto mode = trial % 2 ? campaign::GenMode::planted_yes : campaign::GenMode::random;
    const Instance src = campaign::generate_instance(v, n, rng.uniform(15, 60), mode, rng);
    const ReductionOutput o = reduce_1_to_3(src);
    INFO(trial);
    check_reduction(src, o);
    for (const auto& t : o.targets) {
      // the three sets partition X
      std::vector<Value> all;
      for (const auto& s : t.sets()) all.insert(all.end(), s.begin(), s.end());
      std::sort(all.begin(), all.end());
      CHECK(all == src.sets()[0]);
    }
    CHECK(static_cast<double>(o.stats.total()) <= size_budget(n));
  }
}

TEST_CASE("universe decrease") {
  const Instance src = three({1, 1, 1}, 0, {250, -900, 13}, {400, 77}, {-650, 500, 1}, 1000);
  const UniversePlan plan = plan_decrease(src, Ratio{2, 1});
  // largest multiple of 1 strictly below 1000 / 12
  CHECK(plan.V == 83);
  CHECK(plan.target_universe == 500);
  CHECK(plan.clip == 500);
  CHECK(plan.first_bucket == -13);
  CHECK(plan.last_bucket == 12);
  const ReductionOutput out = decrease_universe(src, Ratio{2, 1});
  check_reduction(src, out);
  const auto count = static_cast<std::uint64_t>(2 * (1000 / plan.V) + 1);
  CHECK(out.count() <= count * count * count);
  // The witness (250, 400, -650) lives in bucket (3, 4, -8).
  bool found = false;
  for (std::size_t i = 0; i < out.count(); ++i) {
    const auto& a = std::get<AffineStep>(out.maps[i].steps()[0]);
    if (a.offset[0] != -3 * 83 || a.offset[1] != -4 * 83 || a.offset[2] != 8 * 83 + 83 * (3 + 4 - 8)) continue;
    found = true;
    const auto w = solve_quadratic(out.targets[i]);
    REQUIRE(w);
    CHECK(out.map_back(i, *w).values == std::array<Value, 3>{250, 400, -650});
  }
  CHECK(found);

  CHECK_THROWS(plan_decrease(three({1, 1, 1}, 0, {1}, {1}, {1}, 10), Ratio{2, 1}));
  CHECK_THROWS(plan_decrease(three({1, 1, 1}, 300, {1}, {1}, {1}, 1000), Ratio{2, 1}));
  CHECK_THROWS(plan_decrease(src, Ratio{1, 1}));
  CHECK(plan_decrease(three({1, 1, -4}, 0, {1}, {1}, {1}, 1000), Ratio{2, 1}).V == 40);

  Rng rng(61);
  const std::vector<Coefficients> alphas = {{1, 1, 1}, {1, 1, -2}, {2, 3, 5}, {1, -3, 2}, {3, 3, -1}};
  for (int trial = 0; trial < 120; ++trial) {
    Variant v{Parity::three_partite, alphas[trial % alphas.size()], 0};
    v.t = gcd3(v.alpha[0], v.alpha[1], v.alpha[2]) * rng.uniform(-10, 10);
    const Value U = 10000;
    const auto n = static_cast<std::size_t>(rng.uniform(3, 20));
    const auto mode = trial % 2 ? campaign::GenMode::planted_yes : campaign::GenMode::random;
    const Instance s = campaign::generate_instance(v, n, U, mode, rng);
    const ReductionOutput o = decrease_universe(s, Ratio{2, 1});
    INFO(trial);
    check_reduction(s, o);
    const UniversePlan p = plan_decrease(s, Ratio{2, 1});
    const auto k = static_cast<std::uint64_t>(2 * (U / p.V) + 1);
    CHECK(o.count() + o.stats.dropped == static_cast<std::uint64_t>(p.last_bucket - p.first_bucket + 1) *
                                             static_cast<std::uint64_t>(p.last_bucket - p.first_bucket + 1) *
                                             static_cast<std::uint64_t>(p.last_bucket - p.first_bucket + 1));
    CHECK(o.count() <= k * k * k);
    for (const auto& t : o.targets) {
      CHECK(t.universe() <= U / 2);
      for (const auto& set : t.sets()) {
        for (Value x : set) CHECK(std::abs(x) <= U / 2);
      }
    }
  }
}

TEST_CASE("chains") {
  const Instance s3 = three({2, 3, 5}, 1, {1}, {2}, {-3});
  const ReductionOutput id = full_chain(s3, s3.variant());
  REQUIRE(id.count() == 1);
  CHECK(id.targets[0] == s3);
  CHECK(id.maps[0].identity());

  Rng rng(71);
  for (int trial = 0; trial < 60; ++trial) {
    const bool forward = trial % 2 == 0;
    const Variant from = forward ? three_sum() : average();
    const Variant to = forward ? average() : three_sum();
    const auto n = static_cast<std::size_t>(rng.uniform(3, 15));
    const Value U = trial % 3 ? rng.uniform(15, 60) : rng.uniform(1000, 10000);
    const auto mode = trial % 4 < 2 ? campaign::GenMode::planted_yes : campaign::GenMode::random;
    const Instance src = campaign::generate_instance(from, n, U, mode, rng);
    const ReductionOutput out = full_chain(src, to);
    INFO(trial);
    check_reduction(src, out);
    for (const auto& t : out.targets) {
      CHECK(t.variant() == to);
      if (out.stats.universe_repaired) CHECK(t.universe() <= src.universe());
    }
    if (U >= 1000) CHECK(out.stats.universe_repaired);
  }

  // Mixed parities and coefficient changes.
  const std::vector<std::pair<Variant, Variant>> pairs = {
      {Variant{Parity::three_partite, {2, 3, 5}, 1}, Variant{Parity::three_partite, {1, 1, -2}, 4}},
      {Variant{Parity::three_partite, {1, 1, 1}, 0}, Variant{Parity::one_partite, {1, -3, 2}, 0}},
      {Variant{Parity::one_partite, {1, 1, 1}, 2}, Variant{Parity::three_partite, {1, 1, 1}, 0}},
      {Variant{Parity::one_partite, {2, 2, -1}, 3}, Variant{Parity::one_partite, {1, 2, 3}, 5}},
  };
  for (int trial = 0; trial < 40; ++trial) {
    const auto& [from, to] = pairs[trial % pairs.size()];
    const Instance src = campaign::generate_instance(from, static_cast<std::size_t>(rng.uniform(3, 12)),
                                                     rng.uniform(20, 3000),
                                                     trial % 2 ? campaign::GenMode::planted_yes
                                                               : campaign::GenMode::random,
                                                     rng);
    const ReductionOutput out = full_chain(src, to);
    INFO(trial);
    check_reduction(src, out);
    for (const auto& t : out.targets) CHECK(t.variant() == to);
  }
  CHECK_THROWS(full_chain(s3, Variant{Parity::one_partite, {0, 1, 1}, 0}));
}
