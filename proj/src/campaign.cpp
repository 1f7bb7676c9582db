#include "ldt/campaign.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace ldt::campaign {

GenMode parse_gen_mode(const std::string& s) {
  if (s == "random") return GenMode::random;
  if (s == "yes") return GenMode::planted_yes;
  if (s == "no") return GenMode::planted_no;
  throw std::invalid_argument("unknown generation mode '" + s + "' (random|yes|no)");
}

const char* to_string(GenMode m) {
  switch (m) {
    case GenMode::random: return "random";
    case GenMode::planted_yes: return "yes";
    case GenMode::planted_no: return "no";
  }
  return "?";
}

namespace {

std::vector<std::size_t> split_sizes(const Variant& v, std::size_t n) {
  const std::size_t k = v.set_count();
  if (n < k) throw std::invalid_argument("generate_instance: n smaller than the number of sets");
  std::vector<std::size_t> sizes(k, n / k);
  for (std::size_t i = 0; i < n % k; ++i) ++sizes[i];
  return sizes;
}

void fill_random(std::vector<std::unordered_set<Value>>& sets, const std::vector<std::size_t>& sizes, Value U,
                 Rng& rng) {
  for (std::size_t i = 0; i < sets.size(); ++i) {
    while (sets[i].size() < sizes[i]) sets[i].insert(rng.uniform(-U, U));
  }
}

Instance to_instance(const Variant& v, Value U, const std::vector<std::unordered_set<Value>>& sets) {
  std::vector<std::vector<Value>> out;
  for (const auto& s : sets) out.emplace_back(s.begin(), s.end());
  return Instance(v, U, std::move(out));
}

// A random triple inside [-U, U] on the plane; distinct for 1-partite.
std::array<Value, 3> planted_triple(const Variant& v, Value U, Rng& rng) {
  int solved = -1;
  for (int i = 2; i >= 0; --i) {
    if (v.alpha[i] != 0) {
      solved = i;
      break;
    }
  }
  if (solved < 0) throw std::invalid_argument("generate_instance: all coefficients are zero");
  for (int attempt = 0; attempt < 20000; ++attempt) {
    std::array<Value, 3> x{};
    WideInt rest = v.t;
    for (int i = 0; i < 3; ++i) {
      if (i == solved) continue;
      x[i] = rng.uniform(-U, U);
      rest -= static_cast<WideInt>(v.alpha[i]) * x[i];
    }
    if (rest % v.alpha[solved] != 0) continue;
    const WideInt xs = rest / v.alpha[solved];
    if (xs < -U || xs > U) continue;
    x[solved] = static_cast<Value>(xs);
    if (v.parity == Parity::one_partite && (x[0] == x[1] || x[0] == x[2] || x[1] == x[2])) continue;
    return x;
  }
  throw std::runtime_error("generate_instance: could not plant a solution in this universe");
}

}  // namespace

Instance generate_instance(const Variant& v, std::size_t n, Value U, GenMode mode, Rng& rng) {
  if (U < 1) throw std::invalid_argument("generate_instance: U must be positive");
  const auto sizes = split_sizes(v, n);
  for (std::size_t s : sizes) {
    if (static_cast<WideInt>(s) > 2 * static_cast<WideInt>(U) + 1) {
      throw std::invalid_argument("generate_instance: universe too small for n");
    }
  }
  std::vector<std::unordered_set<Value>> sets(sizes.size());
  switch (mode) {
    case GenMode::random:
      fill_random(sets, sizes, U, rng);
      return to_instance(v, U, sets);
    case GenMode::planted_yes: {
      if (v.parity == Parity::one_partite && n < 3) throw std::invalid_argument("generate_instance: n < 3");
      const auto x = planted_triple(v, U, rng);
      for (int i = 0; i < 3; ++i) sets[v.parity == Parity::one_partite ? 0 : i].insert(x[i]);
      fill_random(sets, sizes, U, rng);
      return to_instance(v, U, sets);
    }
    case GenMode::planted_no:
      if (n > 40) throw std::invalid_argument("generate_instance: planted NO needs n <= 40");
      for (int attempt = 0; attempt < 1000; ++attempt) {
        for (auto& s : sets) s.clear();
        fill_random(sets, sizes, U, rng);
        Instance inst = to_instance(v, U, sets);
        if (!solve_brute_force(inst)) return inst;
      }
      throw std::runtime_error("generate_instance: no NO instance found in 1000 draws");
  }
  throw std::logic_error("generate_instance: bad mode");
}

std::vector<ReductionKind> all_kinds() {
  return {ReductionKind::shift,
          ReductionKind::rescale,
          ReductionKind::three_to_one_nonzero_t,
          ReductionKind::three_to_one_zero_t,
          ReductionKind::three_to_one_zero_sum,
          ReductionKind::one_to_three,
          ReductionKind::decrease_universe,
          ReductionKind::chain_3sum_to_average,
          ReductionKind::chain_average_to_3sum};
}

const char* to_string(ReductionKind k) {
  switch (k) {
    case ReductionKind::shift: return "shift";
    case ReductionKind::rescale: return "rescale";
    case ReductionKind::three_to_one_nonzero_t: return "3to1_nonzero_t";
    case ReductionKind::three_to_one_zero_t: return "3to1_zero_t";
    case ReductionKind::three_to_one_zero_sum: return "3to1_zero_sum";
    case ReductionKind::one_to_three: return "1to3";
    case ReductionKind::decrease_universe: return "decrease_universe";
    case ReductionKind::chain_3sum_to_average: return "chain_3sum_average";
    case ReductionKind::chain_average_to_3sum: return "chain_average_3sum";
  }
  return "?";
}

std::optional<ReductionKind> parse_kind(const std::string& s) {
  for (ReductionKind k : all_kinds()) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

namespace {

const std::vector<Coefficients> alpha_pool = {{1, 1, 1},  {1, 1, -2}, {2, 3, 5},  {1, -3, 2},
                                              {3, 3, -1}, {2, -4, 6}, {1, 2, -3}, {-1, 4, 2}};

WideInt alpha_sum(const Coefficients& a) { return static_cast<WideInt>(a[0]) + a[1] + a[2]; }

bool fits_kind(ReductionKind k, const Variant& v) {
  if (!v.non_trivial()) return false;
  const bool three = v.parity == Parity::three_partite;
  switch (k) {
    case ReductionKind::shift:
    case ReductionKind::decrease_universe: return three;
    case ReductionKind::rescale: return three && v.t == 0;
    case ReductionKind::three_to_one_nonzero_t: return three && v.t != 0;
    case ReductionKind::three_to_one_zero_t: return three && v.t == 0 && alpha_sum(v.alpha) != 0;
    case ReductionKind::three_to_one_zero_sum: return three && v.t == 0 && alpha_sum(v.alpha) == 0;
    case ReductionKind::one_to_three: return !three;
    case ReductionKind::chain_3sum_to_average: return v == three_sum();
    case ReductionKind::chain_average_to_3sum: return v == average();
  }
  return false;
}

Value random_t(const Coefficients& a, Value bound, bool nonzero, Rng& rng) {
  const Value g = gcd3(a[0], a[1], a[2]);
  const Value k = bound / g;
  for (;;) {
    const Value t = g * rng.uniform(-k, k);
    if (!nonzero || t != 0) return t;
  }
}

Variant pick_variant(ReductionKind kind, const CampaignConfig& config, Rng& rng) {
  if (!config.variants.empty()) {
    std::vector<Variant> pool;
    for (const Variant& v : config.variants) {
      if (fits_kind(kind, v)) pool.push_back(v);
    }
    return pool[rng.below(pool.size())];
  }
  if (kind == ReductionKind::chain_3sum_to_average) return three_sum();
  if (kind == ReductionKind::chain_average_to_3sum) return average();
  for (;;) {
    Variant v;
    v.alpha = alpha_pool[rng.below(alpha_pool.size())];
    v.parity = kind == ReductionKind::one_to_three ? Parity::one_partite : Parity::three_partite;
    switch (kind) {
      case ReductionKind::rescale:
      case ReductionKind::three_to_one_zero_t:
      case ReductionKind::three_to_one_zero_sum: v.t = 0; break;
      case ReductionKind::three_to_one_nonzero_t: v.t = random_t(v.alpha, 30, true, rng); break;
      default: v.t = random_t(v.alpha, 30, false, rng); break;
    }
    if (fits_kind(kind, v)) return v;
  }
}

bool has_pool(ReductionKind kind, const CampaignConfig& config) {
  if (config.variants.empty()) return true;
  return std::any_of(config.variants.begin(), config.variants.end(),
                     [&](const Variant& v) { return fits_kind(kind, v); });
}

ReductionOutput run_reduction(ReductionKind kind, const Instance& source, Rng& rng) {
  switch (kind) {
    case ReductionKind::shift:
      return shift_variant(source, random_t(source.variant().alpha, 30, false, rng));
    case ReductionKind::rescale: return rescale_variant(source, alpha_pool[rng.below(alpha_pool.size())]);
    case ReductionKind::three_to_one_nonzero_t:
    case ReductionKind::three_to_one_zero_t:
    case ReductionKind::three_to_one_zero_sum: return reduce_3_to_1(source);
    case ReductionKind::one_to_three: return reduce_1_to_3(source);
    case ReductionKind::decrease_universe: return decrease_universe(source, Ratio{2, 1});
    case ReductionKind::chain_3sum_to_average: return full_chain(source, average());
    case ReductionKind::chain_average_to_3sum: return full_chain(source, three_sum());
  }
  throw std::logic_error("run_reduction: bad kind");
}

bool is_chain(ReductionKind k) {
  return k == ReductionKind::chain_3sum_to_average || k == ReductionKind::chain_average_to_3sum;
}

}  // namespace

CampaignReport run_verification(ReductionKind kind, const CampaignConfig& config) {
  CampaignReport report;
  report.kind = kind;
  if (!has_pool(kind, config)) return report;
  if (config.n_max < 3) throw std::invalid_argument("run_verification: n_max must be at least 3");

  const std::size_t n_max = config.n_max;
  auto note = [&](std::uint64_t trial, const std::string& what) {
    if (report.failure_notes.size() < 10) {
      report.failure_notes.push_back(std::string(to_string(kind)) + " trial " + std::to_string(trial) + ": " + what);
    }
  };

  for (std::uint64_t trial = 0; trial < config.trials; ++trial) {
    Rng rng(mix_seed(mix_seed(config.seed, static_cast<std::uint64_t>(kind)), trial));
    const Variant v = pick_variant(kind, config, rng);
    const std::size_t n = static_cast<std::size_t>(rng.uniform(3, static_cast<Value>(n_max)));
    Value U_lo = std::max<Value>(10, static_cast<Value>(n));
    if (kind == ReductionKind::decrease_universe) U_lo = std::max<Value>(U_lo, 1000);
    const Value U_hi = std::max(U_lo, config.U_max);
    const Value U = rng.coin() || kind == ReductionKind::decrease_universe
                        ? rng.uniform(U_lo, U_hi)
                        : rng.uniform(U_lo, std::max<Value>(U_lo, std::min<Value>(U_hi, 60)));
    const GenMode mode = trial % 3 == 0 ? GenMode::planted_yes : trial % 3 == 1 ? GenMode::random : GenMode::planted_no;

    ++report.trials;
    bool ok = true;
    try {
      std::optional<Instance> generated;
      try {
        generated = generate_instance(v, n, U, mode, rng);
      } catch (const std::runtime_error&) {
        generated = generate_instance(v, n, U, GenMode::random, rng);
      }
      const Instance& source = *generated;
      const bool truth = solve_brute_force(source).has_value();
      if (truth) ++report.yes_sources;

      const ReductionOutput out = run_reduction(kind, source, rng);
      report.targets += out.count();
      report.sum_m += out.stats.total();
      report.max_m = std::max<std::uint64_t>(report.max_m, out.stats.max());
      report.sum_m_1_5 += out.stats.sum_pow(1.5);
      if (is_chain(kind) && !out.stats.universe_repaired) ++report.unrepaired;

      bool any = false;
      for (std::size_t i = 0; i < out.count(); ++i) {
        const Instance& target = out.targets[i];
        if (kind == ReductionKind::decrease_universe) {
          const Value half = source.universe() / 2;
          bool inside = target.universe() <= half;
          for (const auto& s : target.sets()) {
            for (Value x : s) inside = inside && x >= -half && x <= half;
          }
          if (!inside) ++report.universe_violations;
        } else if (is_chain(kind) && out.stats.universe_repaired && target.universe() > source.universe()) {
          ++report.universe_violations;
        }
        const auto w = solve_quadratic(target);
        if (!w) continue;
        any = true;
        try {
          Witness back = out.map_back(i, *w);
          if (config.corrupt) back.values[0] += 1;
          if (!verify_witness(source, back)) {
            ok = false;
            note(trial, "target " + std::to_string(i) + " witness maps back to an invalid source witness");
          }
        } catch (const MapBackError& e) {
          ok = false;
          note(trial, std::string("map_back failed: ") + e.what());
        }
      }
      if (any != truth) {
        ok = false;
        note(trial, std::string("source oracle ") + (truth ? "YES" : "NO") + " but targets " + (any ? "YES" : "NO"));
      }
    } catch (const std::exception& e) {
      ok = false;
      note(trial, std::string("exception: ") + e.what());
    }
    if (ok) {
      ++report.passes;
    } else {
      ++report.failures;
    }
  }
  return report;
}

void write_report_header(std::ostream& out) {
  out << "reduction,trials,passes,failures,yes_sources,targets,sum_m,max_m,sum_m_1_5,universe_violations,"
         "unrepaired\n";
}

void write_report_row(std::ostream& out, const CampaignReport& r) {
  std::ostringstream m15;
  m15.setf(std::ios::fixed);
  m15.precision(1);
  m15 << r.sum_m_1_5;
  out << to_string(r.kind) << ',' << r.trials << ',' << r.passes << ',' << r.failures << ',' << r.yes_sources << ','
      << r.targets << ',' << r.sum_m << ',' << r.max_m << ',' << m15.str() << ',' << r.universe_violations << ','
      << r.unrepaired << '\n';
}

}  // namespace ldt::campaign
