#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ldt/behrend.hpp"
#include "ldt/campaign.hpp"
#include "ldt/instance_io.hpp"
#include "ldt/partition.hpp"
#include "ldt/reductions.hpp"

namespace fs = std::filesystem;
using namespace ldt;

namespace {

struct Globals {
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  std::string format = "csv";
};

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_gen(const Globals& g, const std::string& spec, std::size_t n, Value U, const std::string& mode,
            std::uint64_t count) {
  const Variant v = parse_variant_spec(spec);
  const campaign::GenMode m = campaign::parse_gen_mode(mode);
  fs::create_directories(g.out_dir);
  for (std::uint64_t i = 0; i < count; ++i) {
    Rng rng(mix_seed(g.seed, i));
    const Instance inst = campaign::generate_instance(v, n, U, m, rng);
    const fs::path path = fs::path(g.out_dir) / ("instance_" + std::to_string(i) + ".txt");
    auto out = open_out(path);
    write_instance(out, inst);
    std::cout << path.string() << '\n';
  }
  return 0;
}

int cmd_solve(const std::string& file, const std::string& method) {
  const Instance inst = read_instance_file(file);
  std::optional<Witness> w;
  if (method == "brute") {
    w = solve_brute_force(inst);
  } else if (method == "quadratic") {
    w = solve_quadratic(inst);
  } else {
    w = solve_pair(inst);
  }
  std::cout << (w ? format_witness(*w) : std::string("NO")) << '\n';
  return 0;
}

int cmd_reduce(const Globals& g, const std::string& file, const std::string& to) {
  const Instance source = read_instance_file(file);
  const Variant target = parse_variant_spec(to);
  const ReductionOutput out = full_chain(source, target);
  fs::create_directories(g.out_dir);
  auto manifest = open_out(fs::path(g.out_dir) / "manifest.csv");
  auto maps = open_out(fs::path(g.out_dir) / "backmap.txt");
  manifest << "# ldt-reduce v1\n"
           << "index,n,U,file\n";
  maps << "# source " << format_variant_spec(source.variant()) << " U=" << source.universe() << '\n';
  for (std::size_t i = 0; i < out.count(); ++i) {
    const std::string name = "target_" + std::to_string(i) + ".txt";
    auto t = open_out(fs::path(g.out_dir) / name);
    write_instance(t, out.targets[i]);
    manifest << i << ',' << out.targets[i].size() << ',' << out.targets[i].universe() << ',' << name << '\n';
    maps << i << ' ' << format_backmap(out.maps[i]) << '\n';
  }
  std::cout << "targets=" << out.count() << " dropped=" << out.stats.dropped << " sum_m=" << out.stats.total()
            << " max_m=" << out.stats.max() << " universe_repaired=" << (out.stats.universe_repaired ? 1 : 0)
            << '\n';
  return 0;
}

int cmd_invert(const std::string& backmap_file, std::size_t index, const std::string& witness,
               const std::string& source_file) {
  std::istringstream in(read_text(backmap_file));
  std::string line;
  std::optional<BackMap> map;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto space = line.find(' ');
    if (space == std::string::npos) throw ParseError("bad back-map line '" + line + "'");
    if (std::stoull(line.substr(0, space)) == index) {
      map = parse_backmap(line.substr(space + 1));
      break;
    }
  }
  if (!map) throw std::runtime_error("no back-map for target " + std::to_string(index));
  const Witness w = map->apply(parse_witness(witness));
  std::cout << format_witness(w) << '\n';
  if (!source_file.empty() && !verify_witness(read_instance_file(source_file), w)) {
    std::cerr << "mapped witness does not verify on the source\n";
    return 1;
  }
  return 0;
}

int cmd_verify(const Globals& g, campaign::CampaignConfig config, const std::vector<std::string>& kinds,
               const std::vector<std::string>& variants) {
  config.seed = g.seed;
  for (const auto& v : variants) config.variants.push_back(parse_variant_spec(v));
  std::vector<campaign::ReductionKind> selected;
  for (const auto& k : kinds) {
    const auto kind = campaign::parse_kind(k);
    if (!kind) throw std::invalid_argument("unknown reduction '" + k + "'");
    selected.push_back(*kind);
  }
  if (selected.empty()) selected = campaign::all_kinds();

  std::uint64_t failures = 0;
  campaign::write_report_header(std::cout);
  for (auto kind : selected) {
    const auto report = campaign::run_verification(kind, config);
    campaign::write_report_row(std::cout, report);
    for (const auto& note : report.failure_notes) std::cerr << note << '\n';
    failures += report.failures + report.universe_violations;
  }
  return failures == 0 ? 0 : 1;
}

int cmd_behrend(std::uint64_t N, std::uint64_t gamma, std::uint64_t delta) {
  const behrend::Params P = behrend::make_params(N, gamma, delta);
  const std::vector<std::uint64_t> sizes = behrend::q_sizes(P);
  std::cout << "r,size\n";
  behrend::BestR best;
  for (std::uint64_t r = 0; r <= P.r_max; ++r) {
    const std::uint64_t s = sizes[r];
    std::cout << r << ',' << s << '\n';
    if (s > best.size) best = {r, s};
  }
  std::cout << "# best_r=" << best.r << " best_size=" << best.size
            << " density=" << static_cast<double>(N) / static_cast<double>(best.size) << " p=" << P.p
            << " d=" << P.d << " m=" << P.m << '\n';
  return 0;
}

std::vector<Value> read_set(const std::string& file, std::size_t set_index) {
  const std::string text = read_text(file);
  if (text.rfind("3LDT", 0) == 0) {
    const Instance inst = parse_instance(text);
    if (set_index < 1 || set_index > inst.set_count()) throw std::invalid_argument("--set out of range");
    const auto s = inst.set(set_index - 1);
    return {s.begin(), s.end()};
  }
  std::vector<Value> out;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    Value v = 0;
    try {
      v = std::stoll(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size()) throw ParseError("bad integer '" + token + "'");
    out.push_back(v);
  }
  return out;
}

int cmd_partition(const std::string& file, std::uint64_t gamma, std::uint64_t delta, std::size_t set_index) {
  const std::vector<Value> A = read_set(file, set_index);
  if (A.empty()) throw std::invalid_argument("partition: input set is empty");
  const auto result = partition::partition_free(A, gamma, delta);
  std::size_t largest = 0;
  for (const auto& part : result.parts) {
    for (std::size_t i = 0; i < part.size(); ++i) std::cout << (i ? " " : "") << part[i];
    std::cout << '\n';
    largest = std::max(largest, part.size());
  }
  std::cout << "parts=" << result.parts.size() << " max_part=" << largest << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ldt: 3-LDT solvers, reductions and verification campaigns"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "PRNG seed")->capture_default_str();
  app.add_option("--out-dir", g.out_dir, "output directory")->capture_default_str();
  app.add_option("--format", g.format, "report format")->check(CLI::IsMember({"csv"}))->capture_default_str();

  std::string spec = "p=1,alpha=1,1,1,t=0";
  std::size_t n = 20;
  Value U = 1000;
  std::string mode = "random";
  std::uint64_t count = 1;
  auto* gen = app.add_subcommand("gen", "generate random instances");
  gen->fallthrough();
  gen->add_option("--variant", spec, "p=<1|3>,alpha=<a,b,c>,t=<t>")->capture_default_str();
  gen->add_option("--n", n, "total number of elements")->capture_default_str();
  gen->add_option("--U", U, "universe bound")->capture_default_str();
  gen->add_option("--mode", mode, "random | yes | no")->capture_default_str();
  gen->add_option("--trials", count, "number of instance files")->capture_default_str();

  std::string in_file;
  std::string method = "quadratic";
  auto* solve = app.add_subcommand("solve", "solve an instance file");
  solve->fallthrough();
  solve->add_option("--in,file", in_file, "instance file")->required();
  solve->add_option("--method", method, "brute | quadratic | pair")
      ->check(CLI::IsMember({"brute", "quadratic", "pair"}))
      ->capture_default_str();

  std::string to;
  auto* reduce = app.add_subcommand("reduce", "reduce an instance to another variant");
  reduce->fallthrough();
  reduce->add_option("--to", to, "target p=<1|3>,alpha=<a,b,c>,t=<t>")->required();
  reduce->add_option("--in", in_file, "source instance file")->required();

  std::string backmap_file, witness, source_file;
  std::size_t index = 0;
  auto* invert = app.add_subcommand("invert", "map a target witness back to the source");
  invert->fallthrough();
  invert->add_option("--backmap", backmap_file, "backmap.txt written by reduce")->required();
  invert->add_option("--index", index, "target index")->required();
  invert->add_option("--witness", witness, "WITNESS line of the target")->required();
  invert->add_option("--source", source_file, "source instance to verify against");

  campaign::CampaignConfig config;
  std::vector<std::string> kinds, variants;
  auto* verify = app.add_subcommand("verify", "run the reduction verification campaign");
  verify->fallthrough();
  verify->add_option("--trials", config.trials, "trials per reduction")->capture_default_str();
  verify->add_option("--n-max", config.n_max, "largest source size")->capture_default_str();
  verify->add_option("--U-max", config.U_max, "largest source universe")->capture_default_str();
  verify->add_option("--reduction", kinds, "restrict to these reductions");
  verify->add_option("--variant", variants, "restrict source variants");
  verify->add_flag("--corrupt-map-back", config.corrupt)->group("");

  std::uint64_t N = 65536, gamma = 1, delta = 1;
  auto* behrend_cmd = app.add_subcommand("behrend", "Behrend set statistics");
  behrend_cmd->require_subcommand(1);
  auto* stats = behrend_cmd->add_subcommand("stats", "sizes of every Q_r");
  stats->fallthrough();
  stats->add_option("--N", N)->required();
  stats->add_option("--gamma", gamma)->capture_default_str();
  stats->add_option("--delta", delta)->capture_default_str();

  std::size_t set_index = 1;
  auto* part = app.add_subcommand("partition", "partition a set into (gamma, delta)-free parts");
  part->fallthrough();
  part->add_option("--gamma", gamma)->capture_default_str();
  part->add_option("--delta", delta)->capture_default_str();
  part->add_option("--in", in_file, "instance file or whitespace-separated integers")->required();
  part->add_option("--set", set_index, "which set of an instance file (1-based)")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return cmd_gen(g, spec, n, U, mode, count);
    if (*solve) return cmd_solve(in_file, method);
    if (*reduce) return cmd_reduce(g, in_file, to);
    if (*invert) return cmd_invert(backmap_file, index, witness, source_file);
    if (*verify) return cmd_verify(g, config, kinds, variants);
    if (*stats) return cmd_behrend(N, gamma, delta);
    if (*part) return cmd_partition(in_file, gamma, delta, set_index);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
