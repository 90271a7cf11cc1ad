#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <future>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "simsched/analysis.hpp"
#include "simsched/schedulers.hpp"

namespace simsched::cli {

namespace {

struct Config {
  std::uint64_t seed = 0;
  std::uint64_t budget = EnumerationBudget{}.max_states;
  double tol = Tolerance{}.rel_eps;
  std::string format = "json";
  std::string output;
  bool timing = false;

  // generate
  std::string kind;
  int m = 3;
  int n = 6;
  double big_k = 10.0;
  std::string env = "identical";
  std::string mode = "NP";
  std::string dist = "uniform-int";

  // analyze / envelope
  std::string instance_path;
  std::string source = "file";
  std::string schedule_path;

  // verify
  std::vector<std::string> claims;
  std::vector<double> speeds;
  int trials = 0;
};

class CliError : public std::runtime_error {
 public:
  CliError(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
  [[nodiscard]] int code() const { return code_; }

 private:
  int code_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError(kBadInput, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const Config& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.output, std::ios::binary);
  if (!file) throw CliError(kBadInput, "cannot write '" + cfg.output + "'");
  file << text;
}

Tolerance tolerance(const Config& cfg) {
  Tolerance t;
  t.rel_eps = cfg.tol;
  return t;
}

ordered_json loads_json(const LoadVector& x) {
  ordered_json a = ordered_json::array();
  for (double v : x) a.push_back(v);
  return a;
}

ordered_json envelope_json(const PrefixEnvelope& env) {
  ordered_json j;
  j["f"] = env.f;
  j["provenance"] = to_string(env.provenance);
  return j;
}

// --- generate ---------------------------------------------------------------

int cmd_generate(const Config& cfg, std::ostream& out) {
  Instance inst;
  if (cfg.kind == "rm") {
    inst = gen_rm_instance(cfg.m);
  } else if (cfg.kind == "tight-related") {
    inst = gen_tight_related(cfg.m);
  } else if (cfg.kind == "sar-unrelated") {
    inst = gen_sar_unrelated(cfg.big_k);
  } else if (cfg.kind == "random") {
    inst = gen_random(parse_env_kind(cfg.env), parse_mode(cfg.mode), cfg.m, cfg.n, cfg.seed,
                      parse_distribution(cfg.dist));
  } else {
    throw CliError(kBadInput, "unknown instance kind '" + cfg.kind + "'");
  }
  emit(cfg, serialize_instance(inst) + "\n", out);
  return kOk;
}

// --- analyze ----------------------------------------------------------------

Schedule build_schedule(const Config& cfg, const Instance& inst) {
  const auto require = [&](bool ok, const char* what) {
    if (!ok) throw CliError(kBadInput, "source '" + cfg.source + "' needs " + what);
  };
  if (cfg.source == "file") {
    require(!cfg.schedule_path.empty(), "--schedule");
    return parse_schedule(read_file(cfg.schedule_path));
  }
  if (cfg.source == "lpt") {
    require(inst.mode == Mode::NP && inst.kind() != EnvKind::Unrelated, "an NP identical or related instance");
    return lpt(inst);
  }
  if (cfg.source == "min-work") {
    require(inst.mode == Mode::NP, "an NP instance");
    return min_work_assignment(inst);
  }
  if (cfg.source == "mcr") {
    require(inst.mode == Mode::PP && inst.kind() == EnvKind::Identical, "a PP identical instance");
    return mcr(inst);
  }
  if (cfg.source == "uniform-fp") {
    require(inst.mode == Mode::FP && inst.kind() == EnvKind::Identical, "an FP identical instance");
    return uniform_fractional(inst);
  }
  if (cfg.source == "regular-fp") {
    require(inst.mode == Mode::FP && inst.kind() == EnvKind::Related, "an FP related instance");
    const auto& speeds = std::get<Related>(inst.env).speeds;
    return expand_merged_split(optimal_regular_fractional(speeds), inst.job_count());
  }
  throw CliError(kBadInput, "unknown schedule source '" + cfg.source + "'");
}

// Coordinate envelope of FP related machines: g(1) = W / Σs from the
// balanced split, g(i) = 0 for i >= 2 from running everything on the fastest.
RatioReport fp_related_c(const Instance& inst, const LoadVector& loads) {
  const SpeedProfile profile(std::get<Related>(inst.env).speeds);
  const double work = inst.total_work();
  const LoadVector x = sorted_desc(loads);
  RatioReport r;
  r.value = safe_ratio(x[0], work / profile.total());
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (const double q = safe_ratio(x[i], 0.0); q > r.value) {
      r.value = q;
      r.witness = i;
      break;
    }
  }
  std::vector<double> competitor(x.size(), 0.0);
  if (r.witness == 0) {
    std::fill(competitor.begin(), competitor.end(), work / profile.total());
  } else {
    competitor[0] = work / profile.fastest();
  }
  r.witness_vector = LoadVector(std::move(competitor));
  return r;
}

int cmd_analyze(const Config& cfg, std::ostream& out) {
  Instance inst = parse_instance(read_file(cfg.instance_path));
  const PrefixEnvelope env = instance_envelope(inst, EnumerationBudget{cfg.budget});
  const Schedule sched = build_schedule(cfg, inst);
  const Tolerance tol = tolerance(cfg);
  const LoadVector loads = load_vector(sched, inst, tol);
  if (const auto* pre = std::get_if<PreemptiveSchedule>(&sched)) {
    const auto issues = check_preemptive(*pre, inst, tol);
    if (!issues.empty()) throw ScheduleError(issues.front());
  }

  const RatioReport s = ratio_s_envelope(loads, env, tol);

  ordered_json j;
  if (!inst.label.empty()) j["instance"] = inst.label;
  j["source"] = cfg.source;
  j["loads"] = loads_json(loads);
  j["s"] = number_or_inf(s.value);
  j["s_witness"] = s.witness + 1;

  std::optional<RatioReport> c;
  if (inst.mode == Mode::NP) {
    c = brute_c_of(inst, loads, OracleOptions{EnumerationBudget{cfg.budget}, 1});
  } else if (inst.mode == Mode::FP && inst.kind() == EnvKind::Related) {
    c = fp_related_c(inst, loads);
  }
  if (c) {
    j["c"] = number_or_inf(c->value);
    j["c_witness"] = c->witness + 1;
    if (c->witness_vector) j["c_competitor"] = loads_json(*c->witness_vector);
  } else {
    j["c"] = nullptr;
  }
  j["envelope"] = envelope_json(env);
  out << (cfg.format == "text" ? dump_json_pretty(j) : dump_json(j)) << "\n";
  return kOk;
}

// --- envelope ---------------------------------------------------------------

int cmd_envelope(const Config& cfg, std::ostream& out) {
  const Instance inst = parse_instance(read_file(cfg.instance_path));
  const PrefixEnvelope env = instance_envelope(inst, EnumerationBudget{cfg.budget});
  const ordered_json j = envelope_json(env);
  emit(cfg, (cfg.format == "text" ? dump_json_pretty(j) : dump_json(j)) + "\n", out);
  return kOk;
}

// --- verify -----------------------------------------------------------------

int cmd_verify(const Config& cfg, std::ostream& out) {
  std::vector<std::string> ids;
  for (const auto& c : cfg.claims) {
    if (c == "all") {
      ids.insert(ids.end(), claim_ids().begin(), claim_ids().end());
    } else if (std::find(claim_ids().begin(), claim_ids().end(), c) == claim_ids().end()) {
      throw CliError(kBadInput, "unknown claim '" + c + "'");
    } else {
      ids.push_back(c);
    }
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  ClaimParams params;
  params.m = cfg.m;
  params.seed = cfg.seed;
  params.budget = EnumerationBudget{cfg.budget};
  params.speeds = cfg.speeds;
  params.trials = cfg.trials;

  std::vector<std::future<BoundReport>> runs;
  runs.reserve(ids.size());
  for (const auto& id : ids) runs.push_back(std::async(std::launch::async, verify_claim, id, params));

  std::ostringstream text;
  bool ok = true;
  for (auto& run : runs) {
    const BoundReport r = run.get();
    if (r.asserted) ok = ok && r.pass;
    text << r.to_json_line(cfg.timing) << "\n";
  }
  emit(cfg, text.str(), out);
  return ok ? kOk : kClaimFailed;
}

// --- report -----------------------------------------------------------------

int cmd_report(const Config& cfg, std::ostream& out) {
  const Table1Report report = table1_report(cfg.m, cfg.seed, EnumerationBudget{cfg.budget});
  emit(cfg, cfg.format == "text" ? report.to_text() : dump_json_pretty(report.to_json()) + "\n", out);
  return kOk;
}

std::uint64_t default_budget() {
  if (const char* env = std::getenv("SIMSCHED_BUDGET")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size() && v > 0) return v;
    } catch (const std::exception&) {
    }
    throw CliError(kBadInput, "SIMSCHED_BUDGET must be a positive integer");
  }
  return EnumerationBudget{}.max_states;
}

void add_common(CLI::App& sub, Config& cfg, bool with_output) {
  sub.add_option("--seed", cfg.seed, "Random seed");
  sub.add_option("--budget", cfg.budget, "Maximum enumerated assignments (default 1e7 or $SIMSCHED_BUDGET)")
      ->check(CLI::PositiveNumber);
  sub.add_option("--tol", cfg.tol, "Relative comparison tolerance")->check(CLI::NonNegativeNumber);
  sub.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  if (with_output) sub.add_option("-o,--output", cfg.output, "Write to file instead of stdout");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config cfg;
  try {
    cfg.budget = default_budget();
  } catch (const CliError& e) {
    err << "error: " << e.what() << "\n";
    return e.code();
  }

  CLI::App app{"Simultaneous approximation analysis for machine scheduling", "simsched"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("generate", "Write a generated instance as JSON");
  gen->add_option("kind", cfg.kind, "rm | tight-related | sar-unrelated | random")
      ->required()
      ->check(CLI::IsMember({"rm", "tight-related", "sar-unrelated", "random"}));
  gen->add_option("--m", cfg.m, "Machines");
  gen->add_option("--n", cfg.n, "Jobs (random)");
  gen->add_option("--K", cfg.big_k, "Off-diagonal time (sar-unrelated)");
  gen->add_option("--env", cfg.env, "identical | related | unrelated (random)");
  gen->add_option("--mode", cfg.mode, "NP | PP | FP (random)");
  gen->add_option("--dist", cfg.dist, "uniform-int | uniform-real | exponential (random)");
  add_common(*gen, cfg, true);

  auto* analyze = app.add_subcommand("analyze", "Evaluate s(S) and c(S) of a schedule");
  analyze->add_option("instance", cfg.instance_path, "Instance JSON file")->required();
  analyze->add_option("--source", cfg.source, "Schedule source")
      ->check(CLI::IsMember({"file", "lpt", "mcr", "uniform-fp", "regular-fp", "min-work"}));
  analyze->add_option("--schedule", cfg.schedule_path, "Schedule JSON file (source 'file')");
  add_common(*analyze, cfg, false);

  auto* envelope = app.add_subcommand("envelope", "Compute the prefix envelope f(1..m)");
  envelope->add_option("instance", cfg.instance_path, "Instance JSON file")->required();
  add_common(*envelope, cfg, true);

  auto* verify = app.add_subcommand("verify", "Run bound verification experiments");
  verify->add_option("claims", cfg.claims, "Claim ids or 'all'")->required();
  verify->add_option("--m", cfg.m, "Machines");
  verify->add_option("--speeds", cfg.speeds, "Speed profile for the related claims")->delimiter(',');
  verify->add_option("--trials", cfg.trials, "Override the number of random trials")->check(CLI::NonNegativeNumber);
  verify->add_flag("--timing", cfg.timing, "Report wall-clock seconds");
  add_common(*verify, cfg, true);

  auto* report = app.add_subcommand("report", "Bound-corridor table of all environments and modes");
  report->add_option("--m", cfg.m, "Machines")->check(CLI::PositiveNumber);
  add_common(*report, cfg, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (gen->parsed()) return cmd_generate(cfg, out);
    if (analyze->parsed()) return cmd_analyze(cfg, out);
    if (envelope->parsed()) return cmd_envelope(cfg, out);
    if (verify->parsed()) return cmd_verify(cfg, out);
    if (report->parsed()) return cmd_report(cfg, out);
  } catch (const CliError& e) {
    err << "error: " << e.what() << "\n";
    return e.code();
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kBudget;
  } catch (const UnsupportedError& e) {
    err << "error: " << e.what() << "\n";
    return kUnsupported;
  } catch (const InstanceError& e) {
    err << "error: invalid instance\n";
    for (const auto& msg : e.errors()) err << "  " << msg << "\n";
    return kBadInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}

}  // namespace simsched::cli
