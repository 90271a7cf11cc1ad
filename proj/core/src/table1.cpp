#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "simsched/analysis.hpp"
#include "simsched/schedulers.hpp"

namespace simsched {

namespace {

constexpr std::uint64_t kRandomCap = 200'000;
constexpr int kRandomInstances = 20;
constexpr const char* kSkipped = "skipped: budget";

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::uint64_t cell_seed(std::uint64_t seed, std::uint64_t cell, std::uint64_t k) {
  std::uint64_t z = seed ^ (cell * 0x9E3779B97F4A7C15ULL) ^ (k * 0xD1B54A32D192ED03ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Job counts for random enumerable instances: m+1 .. largest n with m^n under
// the cap, or nothing when even m+1 jobs do not fit.
std::optional<std::pair<int, int>> random_job_range(int m, const EnumerationBudget& budget) {
  if (m == 1) return std::pair{1, 8};
  const std::uint64_t cap = std::min(budget.max_states, kRandomCap);
  int n = 0;
  std::uint64_t states = 1;
  while (states <= cap / static_cast<std::uint64_t>(m)) {
    states *= static_cast<std::uint64_t>(m);
    ++n;
  }
  if (n < m + 1) return std::nullopt;
  return std::pair{m + 1, n};
}

TableCell make_cell(std::string env, std::string mode, std::string claimed = {}) {
  TableCell cell;
  cell.env = std::move(env);
  cell.mode = std::move(mode);
  cell.claimed = std::move(claimed);
  return cell;
}

double s_of(const NonPreemptiveSchedule& s, const Instance& inst, const PrefixEnvelope& env) {
  return ratio_s_envelope(load_vector(Schedule{s}, inst), env).value;
}

// Max over random NP instances of the better of two schedules' s values.
std::optional<double> random_np_upper(EnvKind kind, int m, std::uint64_t seed, std::uint64_t cell,
                                      const EnumerationBudget& budget) {
  const auto range = random_job_range(m, budget);
  if (!range) return std::nullopt;
  const OracleOptions opt{budget, 1};
  double worst = 1.0;
  for (int k = 0; k < kRandomInstances; ++k) {
    Rng rng(cell_seed(seed, cell, static_cast<std::uint64_t>(k)));
    const int n = static_cast<int>(rng.uniform_int(range->first, range->second));
    const Instance inst = gen_random(kind, Mode::NP, m, n, rng.next(), Distribution::UniformInt);
    const auto env = brute_prefix_envelope(inst, opt);
    const auto second = kind == EnvKind::Identical ? lpt(inst) : min_work_assignment(inst);
    worst = std::max(worst, std::min(s_of(brute_makespan_min(inst, opt), inst, env), s_of(second, inst, env)));
  }
  return worst;
}

std::vector<double> tight_speeds(int m) {
  if (m <= 1) return {1.0};
  return std::get<Related>(gen_tight_related(m).env).speeds;
}

TableCell identical_np(int m, std::uint64_t seed, const EnumerationBudget& budget) {
  TableCell cell = make_cell("identical", "NP");
  bool ok = true;
  bool any = false;
  if (m <= 2) {
    cell.claimed = "WAR = 1";
  } else {
    cell.claimed = "1 < WAR <= 3/2";
    cell.upper = 1.5;
    cell.lower_strict = true;
    const Instance rm = gen_rm_instance(m);
    if (assignment_count(rm) <= budget.max_states) {
      const double star = brute_s_star(rm, OracleOptions{budget, 1}).value;
      cell.evidence["rm_instance_s_star"] = star;
      ok = ok && star > 1.0 + 1e-6;
      any = true;
    } else {
      cell.evidence["rm_instance_s_star"] = kSkipped;
    }
  }
  if (const auto upper = random_np_upper(EnvKind::Identical, m, seed, 1, budget)) {
    cell.evidence["random_best_of_lpt_makespan_min"] = *upper;
    ok = ok && *upper <= cell.upper + 1e-9;
    any = true;
  } else {
    cell.evidence["random_best_of_lpt_makespan_min"] = kSkipped;
  }
  cell.verdict = !any ? kSkipped : ok ? "pass" : "fail";
  return cell;
}

TableCell identical_pp(int m, std::uint64_t seed) {
  TableCell cell = make_cell("identical", "PP", "WAR = 1");
  double worst = 0.0;
  for (int k = 0; k < kRandomInstances; ++k) {
    Rng rng(cell_seed(seed, 2, static_cast<std::uint64_t>(k)));
    const int n = static_cast<int>(rng.uniform_int(1, 2 * m + 2));
    const Instance inst = gen_random(EnvKind::Identical, Mode::PP, m, n, rng.next(), Distribution::UniformInt);
    const auto mine = prefix_sums(sorted_desc(load_vector(Schedule{mcr(inst)}, inst)));
    for (const auto& other : sample_preemptive_loads(inst, rng.next(), 200)) {
      const auto theirs = prefix_sums(sorted_desc(other));
      for (std::size_t i = 0; i < theirs.size(); ++i) worst = std::max(worst, safe_ratio(mine[i], theirs[i]));
    }
  }
  cell.evidence["mcr_max_prefix_ratio_vs_samples"] = worst;
  cell.verdict = worst <= 1.0 + 1e-9 ? "pass" : "fail";
  return cell;
}

TableCell identical_fp(int m, std::uint64_t seed) {
  TableCell cell = make_cell("identical", "FP", "WAR = 1");
  double worst = 0.0;
  for (int k = 0; k < kRandomInstances; ++k) {
    Rng rng(cell_seed(seed, 3, static_cast<std::uint64_t>(k)));
    const int n = static_cast<int>(rng.uniform_int(1, 12));
    const Instance inst = gen_random(EnvKind::Identical, Mode::FP, m, n, rng.next(), Distribution::UniformReal);
    const auto loads = load_vector(Schedule{uniform_fractional(inst)}, inst);
    worst = std::max(worst, ratio_s_envelope(loads, *analytic_envelope(inst)).value);
  }
  cell.evidence["uniform_split_max_s"] = worst;
  cell.verdict = std::abs(worst - 1.0) <= 1e-12 ? "pass" : "fail";
  return cell;
}

TableCell corridor_cell(const std::string& env, const std::string& mode, int m, std::uint64_t seed,
                        const EnumerationBudget& budget, std::uint64_t cell_id) {
  TableCell cell = make_cell(env, mode);
  cell.lower = war_q_fp_sup(m);
  cell.upper = std::sqrt(static_cast<double>(m));
  const bool exact = env == "related" && mode == "FP";
  cell.claimed = exact ? "WAR = (sqrt(m)+1)/2" : "(sqrt(m)+1)/2 <= WAR <= sqrt(m)";
  if (exact) cell.upper = cell.lower;

  bool ok = true;
  const double tight = war_q_fp(SpeedProfile(tight_speeds(m)));
  cell.evidence["tight_profile_war_q_fp"] = tight;
  ok = ok && std::abs(tight - cell.lower) <= 1e-12 * std::max(1.0, cell.lower);

  if (exact) {
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
      Rng rng(cell_seed(seed, cell_id, static_cast<std::uint64_t>(k)));
      worst = std::max(worst, war_q_fp(SpeedProfile(random_speeds(static_cast<std::size_t>(m), rng))));
    }
    cell.evidence["random_profiles_max_war_q_fp"] = worst;
    ok = ok && worst <= cell.lower + 1e-12;
  }

  if (mode == "NP") {
    const EnvKind kind = env == "related" ? EnvKind::Related : EnvKind::Unrelated;
    if (const auto upper = random_np_upper(kind, m, seed, cell_id, budget)) {
      cell.evidence["random_best_of_makespan_min_min_work"] = *upper;
      ok = ok && *upper <= cell.upper + 1e-9;
    } else {
      cell.evidence["random_best_of_makespan_min_min_work"] = kSkipped;
    }
  }
  cell.verdict = ok ? "pass" : "fail";
  return cell;
}

std::string corridor_text(const TableCell& c) {
  if (c.lower == c.upper && !c.lower_strict) return "WAR = " + fmt(c.lower);
  return fmt(c.lower) + (c.lower_strict ? " < " : " <= ") + "WAR <= " + fmt(c.upper);
}

}  // namespace

Table1Report table1_report(int m, std::uint64_t seed, const EnumerationBudget& budget) {
  if (m < 1) throw std::invalid_argument("table1_report needs m >= 1");
  Table1Report report;
  report.m = m;
  report.seed = seed;
  report.cells.push_back(identical_np(m, seed, budget));
  report.cells.push_back(identical_pp(m, seed));
  report.cells.push_back(identical_fp(m, seed));
  std::uint64_t id = 4;
  for (const char* env : {"related", "unrelated"}) {
    for (const char* mode : {"NP", "PP", "FP"}) report.cells.push_back(corridor_cell(env, mode, m, seed, budget, id++));
  }
  return report;
}

ordered_json Table1Report::to_json() const {
  ordered_json cells_json = ordered_json::array();
  for (const auto& c : cells) {
    ordered_json j;
    j["env"] = c.env;
    j["mode"] = c.mode;
    j["claimed"] = c.claimed;
    j["lower"] = c.lower;
    j["lower_strict"] = c.lower_strict;
    j["upper"] = c.upper;
    j["evidence"] = c.evidence;
    j["verdict"] = c.verdict;
    cells_json.push_back(std::move(j));
  }
  ordered_json out;
  out["m"] = m;
  out["seed"] = seed;
  out["cells"] = std::move(cells_json);
  return out;
}

std::string Table1Report::to_text() const {
  std::ostringstream os;
  os << "Weak simultaneous approximation ratios, m = " << m << ", seed = " << seed << "\n\n";
  for (const auto& c : cells) {
    os << c.env << " " << c.mode << ": " << corridor_text(c) << "  [" << c.verdict << "]\n";
    for (const auto& [key, value] : c.evidence.items()) {
      os << "    " << key << ": " << (value.is_number() ? fmt(value.get<double>()) : value.get<std::string>()) << "\n";
    }
  }
  return os.str();
}

bool Table1Report::all_pass() const {
  return std::all_of(cells.begin(), cells.end(), [](const TableCell& c) { return c.verdict != "fail"; });
}

}  // namespace simsched
