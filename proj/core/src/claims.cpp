#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>

#include "simsched/analysis.hpp"
#include "simsched/schedulers.hpp"

namespace simsched {

namespace {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t k) {
  // splitmix64 over the combined key
  std::uint64_t z = seed * 0x9E3779B97F4A7C15ULL + stream * 0xBF58476D1CE4E5B9ULL + k + 1;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double s_against(const LoadVector& loads, const PrefixEnvelope& env) {
  return ratio_s_envelope(loads, env).value;
}

double s_of(const NonPreemptiveSchedule& s, const Instance& inst, const PrefixEnvelope& env) {
  return s_against(load_vector(Schedule{s}, inst), env);
}

int trials_or(const ClaimParams& p, int fallback) { return p.trials > 0 ? p.trials : fallback; }

// Largest n with m^n <= cap (at least 1).
int max_jobs_within(int m, std::uint64_t cap) {
  if (m <= 1) return 8;
  int n = 0;
  std::uint64_t states = 1;
  while (states <= cap / static_cast<std::uint64_t>(m)) {
    states *= static_cast<std::uint64_t>(m);
    ++n;
  }
  return std::max(n, 1);
}

Instance random_instance(EnvKind kind, int m, int n_lo, int n_hi, std::uint64_t seed) {
  Rng rng(seed);
  const int n = static_cast<int>(rng.uniform_int(n_lo, std::max(n_lo, n_hi)));
  return gen_random(kind, Mode::NP, m, n, rng.next(), Distribution::UniformInt);
}

OracleOptions oracle_opts(const ClaimParams& p) { return OracleOptions{p.budget, 1}; }

// --- individual claims -------------------------------------------------------

BoundReport pm_np_lower(const ClaimParams& p) {
  const int m = std::max(p.m, 3);
  const Instance inst = gen_rm_instance(m);
  const auto star = brute_s_star(inst, oracle_opts(p));
  const auto branches = rm_branch_bounds(m);

  BoundReport r;
  r.params = {{"m", m}, {"n", inst.job_count()}, {"r_m", r_m(m)},
              {"branch_big_job_alone", branches.big_job_alone}, {"branch_big_job_shared", branches.big_job_shared}};
  r.measured = star.value;
  r.bound = 1.0;
  r.pass = star.value > 1.0 + 1e-6 && star.value >= branches.min() - 1e-9;
  return r;
}

BoundReport p2_np_one(const ClaimParams& p) {
  const int trials = trials_or(p, 200);
  double worst = 1.0;
  bool exact = true;
  for (int k = 0; k < trials; ++k) {
    const Instance inst = random_instance(EnvKind::Identical, 2, 2, 10, derive_seed(p.seed, 2, k));
    const auto env = brute_prefix_envelope(inst, oracle_opts(p));
    const auto best = load_vector(Schedule{brute_makespan_min(inst, oracle_opts(p))}, inst).max();
    enumerate_assignments(inst, p.budget, [&](std::span<const std::size_t>, std::span<const double> loads) {
      if (*std::max_element(loads.begin(), loads.end()) != best) return;
      const double s = s_against(LoadVector(std::vector<double>(loads.begin(), loads.end())), env);
      worst = std::max(worst, s);
      exact = exact && s == 1.0;
    });
  }
  BoundReport r;
  r.params = {{"m", 2}, {"instances", trials}, {"max_jobs", 10}};
  r.measured = worst;
  r.bound = 1.0;
  r.pass = exact;
  return r;
}

BoundReport p3_np_sqrt5(const ClaimParams& p) {
  const int trials = trials_or(p, 200);
  double worst = 0.0;
  for (int k = 0; k < trials; ++k) {
    const Instance inst = random_instance(EnvKind::Identical, 3, 2, 7, derive_seed(p.seed, 3, k));
    const auto env = brute_prefix_envelope(inst, oracle_opts(p));
    const double s = std::min(s_of(brute_makespan_min(inst, oracle_opts(p)), inst, env),
                              s_of(brute_cover_max(inst, oracle_opts(p)), inst, env));
    worst = std::max(worst, s);
  }
  BoundReport r;
  r.params = {{"m", 3}, {"instances", trials}, {"max_jobs", 7}};
  r.measured = worst;
  r.bound = std::sqrt(5.0) - 1.0;
  r.pass = worst <= r.bound + 1e-9;
  return r;
}

BoundReport pm_np_lpt(const ClaimParams& p) {
  const int m = std::max(p.m, 4);
  const int trials = trials_or(p, m == 4 ? 200 : 100);
  const int n_hi = std::min(max_jobs_within(m, 400'000), max_jobs_within(m, p.budget.max_states));
  double worst = 0.0;
  for (int k = 0; k < trials; ++k) {
    const Instance inst = random_instance(EnvKind::Identical, m, 1, n_hi, derive_seed(p.seed, 4, k));
    worst = std::max(worst, s_of(lpt(inst), inst, brute_prefix_envelope(inst, oracle_opts(p))));
  }
  BoundReport r;
  r.params = {{"m", m}, {"instances", trials}, {"max_jobs", n_hi}};
  r.measured = worst;
  r.bound = 1.5;
  r.pass = worst <= 1.5 + 1e-9;
  return r;
}

BoundReport pm_pp_one(const ClaimParams& p) {
  const int m = std::max(p.m, 1);
  const int trials = trials_or(p, 50);
  const std::size_t samples = 1000;
  const Tolerance rel{0.0, 1e-12};
  bool shape_ok = true;
  bool dominance_ok = true;
  bool lower_bound_ok = true;
  double worst = 0.0;

  for (int k = 0; k < trials; ++k) {
    Rng rng(derive_seed(p.seed, 5, k));
    const int n = static_cast<int>(rng.uniform_int(1, 2 * m + 2));
    Instance inst = gen_random(EnvKind::Identical, Mode::PP, m, n, rng.next(), Distribution::UniformInt);

    std::vector<double> jobs = inst.jobs;
    std::sort(jobs.begin(), jobs.end(), std::greater<>());
    std::size_t i0 = 0;
    for (std::size_t i = 1; i <= std::min<std::size_t>(jobs.size(), m); ++i) {
      const double tail = std::accumulate(jobs.begin() + static_cast<std::ptrdiff_t>(i - 1), jobs.end(), 0.0);
      if (jobs[i - 1] > tail / static_cast<double>(m - static_cast<int>(i) + 1)) i0 = i;
    }
    const LoadVector loads = sorted_desc(load_vector(Schedule{mcr(inst)}, inst));
    const double rest = std::accumulate(jobs.begin() + static_cast<std::ptrdiff_t>(i0), jobs.end(), 0.0) /
                        static_cast<double>(m - static_cast<int>(i0));
    for (std::size_t i = 0; i < loads.size(); ++i) {
      const double expect = i < i0 ? jobs[i] : rest;
      shape_ok = shape_ok && rel.equal(loads[i], expect);
    }

    const auto mine = prefix_sums(loads);
    std::vector<double> job_prefix(static_cast<std::size_t>(m), 0.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < job_prefix.size(); ++i) {
      acc += i < jobs.size() ? jobs[i] : 0.0;
      job_prefix[i] = acc;
    }
    for (const auto& other : sample_preemptive_loads(inst, rng.next(), samples)) {
      const auto theirs = prefix_sums(sorted_desc(other));
      for (std::size_t i = 0; i < theirs.size(); ++i) {
        dominance_ok = dominance_ok && mine[i] <= theirs[i] + 1e-9;
        lower_bound_ok = lower_bound_ok && job_prefix[i] <= theirs[i] + 1e-9;
        worst = std::max(worst, safe_ratio(mine[i], theirs[i]));
      }
    }
  }
  BoundReport r;
  r.params = {{"m", m}, {"instances", trials}, {"samples_per_instance", samples}, {"mcr_shape", shape_ok},
              {"sample_lower_bound", lower_bound_ok}};
  r.measured = worst;
  r.bound = 1.0;
  r.pass = shape_ok && dominance_ok && lower_bound_ok;
  return r;
}

BoundReport pm_fp_one(const ClaimParams& p) {
  const int m = std::max(p.m, 1);
  const int trials = trials_or(p, 50);
  double worst = 0.0;
  for (int k = 0; k < trials; ++k) {
    Rng rng(derive_seed(p.seed, 13, k));
    const int n = static_cast<int>(rng.uniform_int(1, 12));
    const Instance inst = gen_random(EnvKind::Identical, Mode::FP, m, n, rng.next(), Distribution::UniformReal);
    const auto loads = load_vector(Schedule{uniform_fractional(inst)}, inst);
    worst = std::max(worst, s_against(loads, *analytic_envelope(inst)));
  }
  BoundReport r;
  r.params = {{"m", m}, {"instances", trials}};
  r.measured = worst;
  r.bound = 1.0;
  r.pass = std::abs(worst - 1.0) <= 1e-12;
  return r;
}

std::vector<std::vector<double>> claim_profiles(const ClaimParams& p, std::uint64_t stream, int count,
                                                int max_m) {
  if (!p.speeds.empty()) return {SpeedProfile(p.speeds).speeds()};
  std::vector<std::vector<double>> out;
  for (int k = 0; k < count; ++k) {
    Rng rng(derive_seed(p.seed, stream, k));
    const auto m = static_cast<std::size_t>(rng.uniform_int(1, max_m));
    out.push_back(random_speeds(m, rng));
  }
  return out;
}

BoundReport q_fp_envelope(const ClaimParams& p) {
  const int max_m = std::clamp(p.m, 1, 8);
  const auto profiles = claim_profiles(p, 6, trials_or(p, 100), max_m);
  double worst = 0.0;
  bool below = false;
  for (std::size_t k = 0; k < profiles.size(); ++k) {
    const SpeedProfile profile(profiles[k]);
    for (std::size_t i = 1; i <= profile.size(); ++i) {
      const double numeric = numeric_fractional_envelope(profile.speeds(), i, derive_seed(p.seed, 60 + i, k));
      const double closed = closed_f(profile, i);
      worst = std::max(worst, std::abs(numeric - closed));
      below = below || numeric < closed - 1e-9;
    }
  }
  BoundReport r;
  r.params = {{"max_m", max_m}, {"profiles", profiles.size()}, {"samples", 100'000}};
  if (!p.speeds.empty()) r.params["speeds"] = profiles.front();
  r.measured = worst;
  r.bound = 1e-6;
  r.pass = worst <= 1e-6 && !below;
  return r;
}

BoundReport q_fp_formula(const ClaimParams& p) {
  const int m = std::clamp(p.m, 1, 8);
  const auto profiles = claim_profiles(p, 7, trials_or(p, 100), m);

  double construction_gap = 0.0;
  for (const auto& speeds : profiles) {
    const SpeedProfile profile(speeds);
    const auto loads = merged_loads(profile.speeds(), optimal_regular_fractional(profile.speeds()));
    construction_gap = std::max(construction_gap, std::abs(s_against(loads, closed_envelope(profile)) - war_q_fp(profile)));
  }

  double search_gap = 0.0;
  bool sampled_ok = true;
  const std::size_t searched = std::min<std::size_t>(profiles.size(), 10);
  for (std::size_t k = 0; k < searched; ++k) {
    const SpeedProfile profile(profiles[k]);
    std::vector<double> f(profile.size());
    for (std::size_t i = 1; i <= f.size(); ++i)
      f[i - 1] = numeric_fractional_envelope(profile.speeds(), i, derive_seed(p.seed, 70 + i, k));
    const double war = war_q_fp(profile);
    const auto search = numeric_min_regular_ratio(profile.speeds(), f, derive_seed(p.seed, 71, k));
    search_gap = std::max(search_gap, std::abs(search.refined - war));
    for (const auto& loads : sample_regular_loads(profile.speeds(), derive_seed(p.seed, 72, k), 100'000))
      sampled_ok = sampled_ok && s_against(loads, closed_envelope(profile)) >= war - 1e-9;
  }

  bool sup_ok = true;
  double worst_vs_sup = 0.0;
  for (int k = 0; k < 10'000; ++k) {
    Rng rng(derive_seed(p.seed, 73, k));
    const SpeedProfile profile(random_speeds(static_cast<std::size_t>(std::max(p.m, 1)), rng));
    const double war = war_q_fp(profile);
    worst_vs_sup = std::max(worst_vs_sup, war / war_q_fp_sup(std::max(p.m, 1)));
    sup_ok = sup_ok && war <= war_q_fp_sup(std::max(p.m, 1)) + 1e-12;
  }

  BoundReport r;
  r.params = {{"m", m}, {"profiles", profiles.size()}, {"construction_gap", construction_gap},
              {"searched_profiles", searched}, {"sampled_above_formula", sampled_ok},
              {"max_ratio_to_sup", worst_vs_sup}};
  if (!p.speeds.empty()) {
    r.params["speeds"] = profiles.front();
    r.params["war_q_fp"] = war_q_fp(SpeedProfile(profiles.front()));
  }
  r.measured = search_gap;
  r.bound = 1e-6;
  r.pass = construction_gap <= 1e-9 && search_gap <= 1e-6 && sampled_ok && sup_ok;
  return r;
}

std::vector<double> tight_speeds(int m) {
  if (m <= 1) return {1.0};
  return std::get<Related>(gen_tight_related(m).env).speeds;
}

BoundReport q_fp_tight(const ClaimParams& p) {
  const int m = std::max(p.m, 1);
  const double war = war_q_fp(SpeedProfile(tight_speeds(m)));
  BoundReport r;
  r.params = {{"m", m}, {"speeds", tight_speeds(m)}};
  r.measured = war;
  r.bound = war_q_fp_sup(m);
  r.pass = std::abs(war - r.bound) <= 1e-12 * std::max(1.0, r.bound);
  return r;
}

BoundReport r_np_sqrtm(const ClaimParams& p) {
  const int m = std::max(p.m, 1);
  const int trials = trials_or(p, 200);
  const int n_hi = std::min(6, max_jobs_within(m, p.budget.max_states));
  double worst = 0.0;
  for (int k = 0; k < trials; ++k) {
    const Instance inst = random_instance(EnvKind::Unrelated, m, 1, n_hi, derive_seed(p.seed, 9, k));
    const auto env = brute_prefix_envelope(inst, oracle_opts(p));
    const double s = std::min(s_of(brute_makespan_min(inst, oracle_opts(p)), inst, env),
                              s_of(min_work_assignment(inst), inst, env));
    worst = std::max(worst, s);
  }
  BoundReport r;
  r.params = {{"m", m}, {"instances", trials}, {"max_jobs", n_hi}};
  r.measured = worst;
  r.bound = std::sqrt(static_cast<double>(m));
  r.pass = worst <= r.bound + 1e-9;
  return r;
}

BoundReport sar_values(const ClaimParams& p) {
  const int m = std::clamp(p.m, 1, 7);
  const Instance units{Identical{m}, Mode::NP, std::vector<double>(static_cast<std::size_t>(m), 1.0), "units"};
  const double identical = brute_c_star(units, oracle_opts(p)).value;

  const Instance quarters{Related{{3.0, 1.0}}, Mode::NP, std::vector<double>(4, 0.25), "quarters"};
  const double related = brute_c_star(quarters, oracle_opts(p)).value;
  const double related_sar = sar_value(quarters.env);

  bool unrelated_ok = true;
  ordered_json unrelated = ordered_json::object();
  for (double k : {2.0, 10.0, 100.0}) {
    const double c = brute_c_star(gen_sar_unrelated(k), oracle_opts(p)).value;
    unrelated[format_number(k)] = c;
    unrelated_ok = unrelated_ok && c == k + 1.0;
  }

  BoundReport r;
  r.params = {{"m", m}, {"related_c_star", related}, {"related_sar", related_sar}, {"unrelated_c_star", unrelated}};
  r.measured = identical;
  r.bound = static_cast<double>(m);
  r.pass = identical == static_cast<double>(m) && std::abs(related - related_sar) <= 0.1 * related_sar &&
           unrelated_ok;
  return r;
}

// Shrinks `v` in the prefix-sum order: Robin Hood transfers from a larger to a
// smaller coordinate (never past the midpoint) and plain decrements.
std::vector<double> shrink(std::vector<double> v, Rng& rng) {
  const std::size_t steps = rng.index(4);
  for (std::size_t k = 0; k < steps && !v.empty(); ++k) {
    const std::size_t a = rng.index(v.size());
    const std::size_t b = rng.index(v.size());
    if (rng.uniform() < 0.5) {
      if (v[a] > v[b]) {
        const auto room = static_cast<std::int64_t>((v[a] - v[b]) / 2.0);
        const auto d = static_cast<double>(rng.uniform_int(0, room));
        v[a] -= d;
        v[b] += d;
      }
    } else {
      v[a] -= static_cast<double>(rng.uniform_int(0, static_cast<std::int64_t>(v[a])));
    }
  }
  rng.shuffle(v);
  return v;
}

std::vector<double> random_ints(std::size_t len, Rng& rng) {
  std::vector<double> v(len);
  for (double& x : v) x = static_cast<double>(rng.uniform_int(0, 12));
  return v;
}

BoundReport properties(const ClaimParams& p) {
  const int trials = trials_or(p, 10'000);
  const Tolerance exact = Tolerance::exact();
  std::map<std::string, int> violations{{"merge", 0}, {"rearrangement", 0}, {"coord_implies_prefix", 0},
                                        {"transitivity", 0}, {"ratio_order", 0}};
  Rng rng(derive_seed(p.seed, 11, 0));
  for (int k = 0; k < trials; ++k) {
    const std::size_t len = 1 + rng.index(6);

    const auto y = random_ints(len, rng);
    const auto x = shrink(y, rng);
    const auto y2 = random_ints(2, rng);
    const auto x2 = shrink(y2, rng);
    if (prefix_dominates(LoadVector(x), LoadVector(y), exact) &&
        prefix_dominates(LoadVector(x2), LoadVector(y2), exact) &&
        !prefix_dominates(concat(LoadVector(x), LoadVector(x2)), concat(LoadVector(y), LoadVector(y2)), exact))
      ++violations["merge"];

    auto a = random_ints(len, rng);
    auto b = random_ints(len, rng);
    std::sort(a.begin(), a.end(), std::greater<>());
    std::sort(b.begin(), b.end(), std::greater<>());
    auto perm = b;
    rng.shuffle(perm);
    double aligned = 0.0;
    double permuted = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
      aligned += a[i] * b[i];
      permuted += a[i] * perm[i];
    }
    if (permuted > aligned) ++violations["rearrangement"];

    auto bumped = random_ints(len, rng);
    auto base = bumped;
    for (double& v : base) v = std::max(0.0, v - static_cast<double>(rng.uniform_int(0, 4)));
    rng.shuffle(base);
    if (coord_dominates(LoadVector(base), LoadVector(bumped), exact) &&
        !prefix_dominates(LoadVector(base), LoadVector(bumped), exact))
      ++violations["coord_implies_prefix"];

    const auto top = random_ints(len, rng);
    const auto mid = shrink(top, rng);
    const auto low = rng.uniform() < 0.5 ? shrink(mid, rng) : random_ints(len, rng);
    if (prefix_dominates(LoadVector(low), LoadVector(mid), exact) &&
        prefix_dominates(LoadVector(mid), LoadVector(top), exact) &&
        !prefix_dominates(LoadVector(low), LoadVector(top), exact))
      ++violations["transitivity"];

    const auto u = random_ints(len, rng);
    const auto w = random_ints(len, rng);
    if (ratio_s_pair(LoadVector(u), LoadVector(w)) > ratio_c_pair(LoadVector(u), LoadVector(w)))
      ++violations["ratio_order"];
  }
  int total = 0;
  BoundReport r;
  r.params = {{"trials", trials}};
  for (const auto& [name, count] : violations) {
    r.params[name] = count;
    total += count;
  }
  r.measured = total;
  r.bound = 0.0;
  r.pass = total == 0;
  return r;
}

BoundReport q_np_discretize(const ClaimParams& p) {
  const int m = std::max(p.m, 2);
  const auto speeds = tight_speeds(m);
  const SpeedProfile profile(speeds);
  const double war = war_q_fp(profile);
  const double upper = std::sqrt(static_cast<double>(m));

  const Instance coarse = discretize(speeds, 0.1);
  const double coarse_star = brute_s_star(coarse, oracle_opts(p)).value;

  // Non-preemptive loads are fractionally feasible, so the fractional envelope
  // lies below the discrete one and s(LPT) against it is an upper bound on s*.
  const Instance fine = discretize(speeds, 0.01);
  const double fine_upper = s_against(load_vector(Schedule{lpt(fine)}, fine), closed_envelope(profile));

  BoundReport r;
  r.asserted = false;
  r.params = {{"m", m},
              {"war_q_fp", war},
              {"eps_0.1_s_star", coarse_star},
              {"eps_0.1_corridor", {war - 1.0, upper}},
              {"eps_0.01_lpt_upper", fine_upper},
              {"eps_0.01_corridor", {war - 0.1, upper}}};
  r.measured = coarse_star;
  r.bound = war - 1.0;
  r.pass = coarse_star >= war - 1.0 - 1e-9 && coarse_star <= upper + 1e-9 && fine_upper <= upper + 1e-9;
  return r;
}

using ClaimFn = std::function<BoundReport(const ClaimParams&)>;

const std::map<std::string, ClaimFn>& registry() {
  static const std::map<std::string, ClaimFn> claims{
      {"p2_np_one", p2_np_one},         {"p3_np_sqrt5", p3_np_sqrt5}, {"pm_fp_one", pm_fp_one},
      {"pm_np_lower", pm_np_lower},     {"pm_np_lpt", pm_np_lpt},     {"pm_pp_one", pm_pp_one},
      {"properties", properties},       {"q_fp_envelope", q_fp_envelope}, {"q_fp_formula", q_fp_formula},
      {"q_fp_tight", q_fp_tight},       {"q_np_discretize", q_np_discretize}, {"r_np_sqrtm", r_np_sqrtm},
      {"sar_values", sar_values},
  };
  return claims;
}

}  // namespace

const std::vector<std::string>& claim_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& [id, fn] : registry()) out.push_back(id);
    return out;
  }();
  return ids;
}

BoundReport verify_claim(const std::string& claim, const ClaimParams& params) {
  const auto it = registry().find(claim);
  if (it == registry().end()) throw UnknownClaim("unknown claim '" + claim + "'");
  const auto start = std::chrono::steady_clock::now();
  BoundReport report = it->second(params);
  report.claim = claim;
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string BoundReport::to_json_line(bool with_timing) const {
  ordered_json j;
  j["claim"] = claim;
  j["params"] = params;
  j["measured"] = number_or_inf(measured);
  j["bound"] = number_or_inf(bound);
  j["verdict"] = verdict();
  j["seconds"] = with_timing ? seconds : 0.0;
  j["asserted"] = asserted;
  return dump_json(j);
}

}  // namespace simsched
