#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ldt/core.hpp"
#include "ldt/reductions.hpp"
#include "ldt/rng.hpp"

namespace ldt::campaign {

enum class GenMode { random, planted_yes, planted_no };

GenMode parse_gen_mode(const std::string& s);
const char* to_string(GenMode m);

// n is the total number of elements (split as evenly as possible over the
// three sets of a 3-partite variant; every set gets at least one element).
// planted_yes inserts a solution; planted_no resamples until the brute-force
// oracle finds none (n <= 40) and throws if that keeps failing.
Instance generate_instance(const Variant& v, std::size_t n, Value U, GenMode mode, Rng& rng);

enum class ReductionKind {
  shift,
  rescale,
  three_to_one_nonzero_t,
  three_to_one_zero_t,
  three_to_one_zero_sum,
  one_to_three,
  decrease_universe,
  chain_3sum_to_average,
  chain_average_to_3sum,
};

std::vector<ReductionKind> all_kinds();
const char* to_string(ReductionKind k);
std::optional<ReductionKind> parse_kind(const std::string& s);

struct CampaignConfig {
  std::uint64_t trials = 200;
  std::size_t n_max = 30;
  Value U_max = 10000;
  std::uint64_t seed = 1;
  // Restricts the source variants; empty means each reduction's default pool.
  std::vector<Variant> variants;
  // Negative control: perturbs every mapped-back witness.
  bool corrupt = false;
};

struct CampaignReport {
  ReductionKind kind{};
  std::uint64_t trials = 0;
  std::uint64_t passes = 0;
  std::uint64_t failures = 0;
  std::uint64_t yes_sources = 0;
  std::uint64_t targets = 0;
  std::uint64_t sum_m = 0;
  std::uint64_t max_m = 0;
  double sum_m_1_5 = 0;  // sum of m_i^1.5
  std::uint64_t universe_violations = 0;
  std::uint64_t unrepaired = 0;  // chains whose universe could not be restored
  std::vector<std::string> failure_notes;
};

CampaignReport run_verification(ReductionKind kind, const CampaignConfig& config);

void write_report_header(std::ostream& out);
void write_report_row(std::ostream& out, const CampaignReport& r);

}  // namespace ldt::campaign
