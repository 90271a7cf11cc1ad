#include "simsched/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <map>
#include <numeric>

#include <Eigen/Dense>

#include "simsched/random.hpp"
#include "simsched/schedulers.hpp"

namespace simsched {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::vector<double>> times_matrix(const Instance& inst) {
  std::vector<std::vector<double>> t(inst.job_count(), std::vector<double>(inst.machines()));
  for (std::size_t j = 0; j < inst.job_count(); ++j)
    for (std::size_t i = 0; i < inst.machines(); ++i) t[j][i] = inst.processing_time(i, j);
  return t;
}

// Depth-first walk with one load row per depth, so each leaf's loads are the
// in-order sums and nothing is ever subtracted back out.
class Walker {
 public:
  Walker(const Instance& inst, const AssignmentVisitor& visit)
      : times_(times_matrix(inst)),
        m_(inst.machines()),
        n_(inst.job_count()),
        visit_(visit),
        rows_(n_ + 1, std::vector<double>(m_, 0.0)),
        assignment_(n_, 0) {}

  std::uint64_t run_from(std::size_t first_machine) {
    if (n_ == 0) {
      visit_(assignment_, rows_[0]);
      return 1;
    }
    place(0, first_machine);
    return count_;
  }

 private:
  void place(std::size_t j, std::size_t i) {
    rows_[j + 1] = rows_[j];
    rows_[j + 1][i] += times_[j][i];
    assignment_[j] = i;
    if (j + 1 == n_) {
      visit_(assignment_, rows_[n_]);
      ++count_;
      return;
    }
    for (std::size_t next = 0; next < m_; ++next) place(j + 1, next);
  }

  std::vector<std::vector<double>> times_;
  std::size_t m_;
  std::size_t n_;
  const AssignmentVisitor& visit_;
  std::vector<std::vector<double>> rows_;
  std::vector<std::size_t> assignment_;
  std::uint64_t count_ = 0;
};

void check_budget(const Instance& inst, const EnumerationBudget& budget) {
  const std::uint64_t need = assignment_count(inst);
  if (need > budget.max_states) throw BudgetExceeded(need, budget.max_states);
}

// Runs `make_task(first_machine)` for every slice, `workers` at a time, and
// returns the results in slice order.
template <class Result, class MakeTask>
std::vector<Result> run_slices(const Instance& inst, const OracleOptions& opt, MakeTask make_task) {
  check_budget(inst, opt.budget);
  const std::size_t slices = inst.job_count() == 0 ? 1 : inst.machines();
  std::vector<Result> out(slices);
  const std::size_t workers = std::max(1u, opt.workers);
  if (workers == 1) {
    for (std::size_t s = 0; s < slices; ++s) out[s] = make_task(s);
    return out;
  }
  for (std::size_t base = 0; base < slices; base += workers) {
    std::vector<std::future<Result>> running;
    for (std::size_t s = base; s < std::min(slices, base + workers); ++s)
      running.push_back(std::async(std::launch::async, make_task, s));
    for (std::size_t k = 0; k < running.size(); ++k) out[base + k] = running[k].get();
  }
  return out;
}

void sort_desc(std::vector<double>& v) { std::sort(v.begin(), v.end(), std::greater<>()); }

struct Best {
  double value = kInf;
  std::vector<std::size_t> assignment;
  std::vector<double> loads;
  bool found = false;
};

// Keeps the first (lexicographically smallest) minimizer across ordered slices.
Best reduce_min(const std::vector<Best>& parts) {
  Best best;
  for (const auto& p : parts) {
    if (p.found && (!best.found || p.value < best.value)) best = p;
  }
  return best;
}

NonPreemptiveSchedule to_schedule(const Best& b) { return NonPreemptiveSchedule{b.assignment}; }

}  // namespace

BudgetExceeded::BudgetExceeded(std::uint64_t required, std::uint64_t allowed)
    : std::runtime_error("enumeration needs " +
                         (required == UINT64_MAX ? std::string("more than 2^64") : std::to_string(required)) +
                         " states, budget is " + std::to_string(allowed)),
      required_(required),
      allowed_(allowed) {}

std::uint64_t assignment_count(const Instance& inst) {
  const std::uint64_t m = inst.machines();
  std::uint64_t total = 1;
  for (std::size_t j = 0; j < inst.job_count(); ++j) {
    if (m != 0 && total > UINT64_MAX / m) return UINT64_MAX;
    total *= m;
  }
  return total;
}

std::uint64_t enumerate_slice(const Instance& inst, std::size_t first_machine, const AssignmentVisitor& visitor) {
  if (first_machine >= inst.machines()) throw std::out_of_range("enumerate_slice: machine index out of range");
  Walker walker(inst, visitor);
  return walker.run_from(first_machine);
}

std::uint64_t enumerate_assignments(const Instance& inst, const EnumerationBudget& budget,
                                    const AssignmentVisitor& visitor) {
  check_budget(inst, budget);
  std::uint64_t visits = 0;
  if (inst.job_count() == 0) return enumerate_slice(inst, 0, visitor);
  for (std::size_t i = 0; i < inst.machines(); ++i) visits += enumerate_slice(inst, i, visitor);
  return visits;
}

PrefixEnvelope brute_prefix_envelope(const Instance& inst, const OracleOptions& opt) {
  const std::size_t m = inst.machines();
  auto parts = run_slices<std::vector<double>>(inst, opt, [&](std::size_t first) {
    std::vector<double> f(m, kInf);
    std::vector<double> sorted(m);
    enumerate_slice(inst, first, [&](std::span<const std::size_t>, std::span<const double> loads) {
      sorted.assign(loads.begin(), loads.end());
      sort_desc(sorted);
      double prefix = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        prefix += sorted[i];
        f[i] = std::min(f[i], prefix);
      }
    });
    return f;
  });
  PrefixEnvelope env{std::vector<double>(m, kInf), PrefixEnvelope::Provenance::ExactEnumeration};
  for (const auto& p : parts)
    for (std::size_t i = 0; i < m; ++i) env.f[i] = std::min(env.f[i], p[i]);
  return env;
}

StarResult brute_s_star(const Instance& inst, const OracleOptions& opt) {
  const PrefixEnvelope env = brute_prefix_envelope(inst, opt);
  const std::size_t m = inst.machines();
  auto parts = run_slices<Best>(inst, opt, [&](std::size_t first) {
    Best best;
    std::vector<double> sorted(m);
    enumerate_slice(inst, first, [&](std::span<const std::size_t> a, std::span<const double> loads) {
      sorted.assign(loads.begin(), loads.end());
      sort_desc(sorted);
      double prefix = 0.0;
      double s = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        prefix += sorted[i];
        s = std::max(s, prefix / env.f[i]);
      }
      if (s < best.value) {
        best.value = s;
        best.assignment.assign(a.begin(), a.end());
        best.loads.assign(loads.begin(), loads.end());
        best.found = true;
      }
    });
    return best;
  });
  const Best best = reduce_min(parts);
  return StarResult{best.value, to_schedule(best), LoadVector(best.loads)};
}

StarResult brute_c_star(const Instance& inst, const OracleOptions& opt) {
  const std::size_t m = inst.machines();
  using Canonical = std::map<std::vector<double>, std::vector<std::size_t>>;
  auto parts = run_slices<Canonical>(inst, opt, [&](std::size_t first) {
    Canonical seen;
    std::vector<double> sorted(m);
    enumerate_slice(inst, first, [&](std::span<const std::size_t> a, std::span<const double> loads) {
      sorted.assign(loads.begin(), loads.end());
      sort_desc(sorted);
      seen.try_emplace(sorted, a.begin(), a.end());
    });
    return seen;
  });
  // Earlier slices hold lexicographically smaller representatives.
  Canonical all;
  for (const auto& p : parts)
    for (const auto& [key, rep] : p) all.try_emplace(key, rep);

  const std::uint64_t distinct = all.size();
  if (distinct > 0 && distinct > opt.budget.max_states / distinct) {
    throw BudgetExceeded(distinct * distinct, opt.budget.max_states);
  }

  std::vector<LoadVector> vectors;
  vectors.reserve(all.size());
  for (const auto& [key, rep] : all) vectors.emplace_back(key);

  Best best;
  std::size_t k = 0;
  for (const auto& [key, rep] : all) {
    double c = 0.0;
    for (const auto& y : vectors) c = std::max(c, ratio_c_pair(vectors[k], y));
    if (!best.found || c < best.value || (c == best.value && rep < best.assignment)) {
      best.value = c;
      best.assignment = rep;
      best.found = true;
    }
    ++k;
  }
  const auto loads = load_vector(Schedule{NonPreemptiveSchedule{best.assignment}}, inst);
  return StarResult{best.value, to_schedule(best), loads};
}

RatioReport brute_c_of(const Instance& inst, const LoadVector& x, const OracleOptions& opt) {
  if (x.size() != inst.machines()) throw DimensionError("brute_c_of: load vector length differs from machine count");
  const LoadVector sx = sorted_desc(x);
  const std::size_t m = inst.machines();
  struct Part {
    double value = 0.0;
    std::size_t witness = 0;
    std::vector<double> competitor;
  };
  auto parts = run_slices<Part>(inst, opt, [&](std::size_t first) {
    Part part;
    std::vector<double> sorted(m);
    enumerate_slice(inst, first, [&](std::span<const std::size_t>, std::span<const double> loads) {
      sorted.assign(loads.begin(), loads.end());
      sort_desc(sorted);
      for (std::size_t i = 0; i < m; ++i) {
        const double r = safe_ratio(sx[i], sorted[i]);
        if (part.competitor.empty() || r > part.value) {
          part.value = r;
          part.witness = i;
          part.competitor = sorted;
        }
      }
    });
    return part;
  });
  RatioReport report{0.0, 0, std::nullopt};
  for (const auto& p : parts) {
    if (!report.witness_vector || p.value > report.value) {
      report.value = p.value;
      report.witness = p.witness;
      report.witness_vector = LoadVector(p.competitor);
    }
  }
  return report;
}

NonPreemptiveSchedule brute_makespan_min(const Instance& inst, const OracleOptions& opt) {
  auto parts = run_slices<Best>(inst, opt, [&](std::size_t first) {
    Best best;
    enumerate_slice(inst, first, [&](std::span<const std::size_t> a, std::span<const double> loads) {
      const double makespan = *std::max_element(loads.begin(), loads.end());
      if (makespan < best.value) {
        best.value = makespan;
        best.assignment.assign(a.begin(), a.end());
        best.found = true;
      }
    });
    return best;
  });
  return to_schedule(reduce_min(parts));
}

NonPreemptiveSchedule brute_cover_max(const Instance& inst, const OracleOptions& opt) {
  auto parts = run_slices<Best>(inst, opt, [&](std::size_t first) {
    Best best;
    enumerate_slice(inst, first, [&](std::span<const std::size_t> a, std::span<const double> loads) {
      const double cover = -*std::min_element(loads.begin(), loads.end());
      if (cover < best.value) {
        best.value = cover;
        best.assignment.assign(a.begin(), a.end());
        best.found = true;
      }
    });
    return best;
  });
  return to_schedule(reduce_min(parts));
}

// ---------------------------------------------------------------------------
// Samplers

std::vector<PreemptiveSchedule> sample_preemptive_schedules(const Instance& inst, std::uint64_t seed,
                                                            std::size_t count) {
  if (inst.kind() != EnvKind::Identical) throw ScheduleError("preemptive sampler needs identical machines");
  const std::size_t m = inst.machines();
  const std::size_t n = inst.job_count();
  Rng rng(seed);
  std::vector<PreemptiveSchedule> out;
  out.reserve(count);

  for (std::size_t c = 0; c < count; ++c) {
    const std::size_t groups = 1 + rng.index(std::min(m, n));

    std::vector<std::size_t> job_order(n);
    std::iota(job_order.begin(), job_order.end(), 0);
    rng.shuffle(job_order);
    std::vector<std::size_t> group_of(n);
    for (std::size_t k = 0; k < n; ++k) group_of[job_order[k]] = k < groups ? k : rng.index(groups);

    const std::size_t used = groups + rng.index(m - groups + 1);
    std::vector<std::size_t> machine_order(m);
    std::iota(machine_order.begin(), machine_order.end(), 0);
    rng.shuffle(machine_order);
    std::vector<std::size_t> width(groups, 1);
    for (std::size_t k = groups; k < used; ++k) ++width[rng.index(groups)];

    PreemptiveSchedule s;
    s.segments.resize(m);
    std::size_t next_machine = 0;
    for (std::size_t g = 0; g < groups; ++g) {
      std::vector<std::size_t> members;
      std::vector<double> sizes;
      for (std::size_t j = 0; j < n; ++j) {
        if (group_of[j] == g) {
          members.push_back(j);
          sizes.push_back(inst.jobs[j]);
        }
      }
      const double total = std::accumulate(sizes.begin(), sizes.end(), 0.0);
      const double longest = *std::max_element(sizes.begin(), sizes.end());
      const double lower = std::max(longest, total / static_cast<double>(width[g]));
      const double deadline = rng.uniform() < 0.5 ? lower : lower * (1.0 + rng.uniform());
      const auto part = mcnaughton(sizes, width[g], deadline);
      for (std::size_t k = 0; k < width[g]; ++k) {
        auto& target = s.segments[machine_order[next_machine + k]];
        for (auto seg : part.segments[k]) {
          seg.job = members[seg.job];
          target.push_back(seg);
        }
      }
      next_machine += width[g];
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<LoadVector> sample_preemptive_loads(const Instance& inst, std::uint64_t seed, std::size_t count) {
  std::vector<LoadVector> out;
  out.reserve(count);
  for (const auto& s : sample_preemptive_schedules(inst, seed, count)) out.push_back(load_vector(Schedule{s}, inst));
  return out;
}

namespace {

void require_unit_speeds(std::span<const double> speeds) {
  if (speeds.empty()) throw std::invalid_argument("speed list is empty");
  for (double s : speeds)
    if (!(s > 0.0)) throw std::invalid_argument("speeds must be positive");
  if (!std::is_sorted(speeds.begin(), speeds.end(), std::greater<>()))
    throw std::invalid_argument("speeds must be non-increasing");
}

std::vector<double> random_regular(std::span<const double> speeds, Rng& rng) {
  const std::size_t m = speeds.size();
  std::vector<double> loads(m);
  double shares = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    loads[k] = rng.exponential();
    shares += loads[k];
  }
  for (std::size_t k = 0; k < m; ++k) loads[k] = loads[k] / shares / speeds[k];
  sort_desc(loads);
  double work = 0.0;
  for (std::size_t k = 0; k < m; ++k) work += speeds[k] * loads[k];
  for (double& l : loads) l /= work;
  return loads;
}

double prefix_of(std::span<const double> loads, std::size_t len) {
  return std::accumulate(loads.begin(), loads.begin() + static_cast<std::ptrdiff_t>(len), 0.0);
}

// Regular loads from nonnegative gap weights w: L_k = Σ_{j>=k} w_j / S_j with
// S_j = s_1 + ... + s_j, which keeps Σ s_k L_k = Σ w_j.
std::vector<double> loads_from_gaps(std::span<const double> w, std::span<const double> cumulative) {
  const std::size_t m = w.size();
  std::vector<double> loads(m, 0.0);
  double acc = 0.0;
  for (std::size_t k = m; k-- > 0;) {
    acc += w[k] / cumulative[k];
    loads[k] = acc;
  }
  return loads;
}

}  // namespace

std::vector<LoadVector> sample_regular_loads(std::span<const double> speeds, std::uint64_t seed, std::size_t count) {
  require_unit_speeds(speeds);
  Rng rng(seed);
  std::vector<LoadVector> out;
  out.reserve(count);
  for (std::size_t c = 0; c < count; ++c) out.emplace_back(random_regular(speeds, rng));
  return out;
}

double numeric_fractional_envelope(std::span<const double> speeds, std::size_t prefix_len, std::uint64_t seed,
                                   std::size_t samples) {
  require_unit_speeds(speeds);
  const std::size_t m = speeds.size();
  if (prefix_len < 1 || prefix_len > m) throw std::out_of_range("numeric_fractional_envelope: prefix length");

  Rng rng(seed);
  std::vector<double> best_loads;
  double best = kInf;
  for (std::size_t c = 0; c < std::max<std::size_t>(samples, 1); ++c) {
    auto loads = random_regular(speeds, rng);
    const double v = prefix_of(loads, prefix_len);
    if (v < best) {
      best = v;
      best_loads = std::move(loads);
    }
  }

  std::vector<double> cumulative(m);
  std::partial_sum(speeds.begin(), speeds.end(), cumulative.begin());
  std::vector<double> w(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double next = k + 1 < m ? best_loads[k + 1] : 0.0;
    w[k] = std::max(0.0, best_loads[k] - next) * cumulative[k];
  }
  const double mass = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= mass;

  const auto objective = [&](const std::vector<double>& gaps) {
    return prefix_of(loads_from_gaps(gaps, cumulative), prefix_len);
  };
  best = std::min(best, objective(w));
  for (bool improved = true; improved;) {
    improved = false;
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) {
        if (a == b || w[a] <= 0.0) continue;
        for (double step = 1.0; step > 0x1.0p-30; step *= 0.5) {
          auto trial = w;
          const double moved = trial[a] * step;
          trial[a] -= moved;
          trial[b] += moved;
          const double v = objective(trial);
          if (v < best) {
            best = v;
            w = std::move(trial);
            improved = true;
            break;
          }
        }
      }
    }
  }
  return best;
}

RegularRatioSearch numeric_min_regular_ratio(std::span<const double> speeds, std::span<const double> f,
                                             std::uint64_t seed, std::size_t samples) {
  require_unit_speeds(speeds);
  const std::size_t m = speeds.size();
  if (f.size() != m) throw DimensionError("numeric_min_regular_ratio: envelope length differs from speeds");
  if (m > 10) throw std::invalid_argument("numeric_min_regular_ratio: at most 10 machines");

  const auto ratio = [&](std::span<const double> loads) {
    double s = 0.0;
    double prefix = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      prefix += loads[i];
      s = std::max(s, prefix / f[i]);
    }
    return s;
  };

  RegularRatioSearch out;
  out.sampled = kInf;
  Rng rng(seed);
  for (std::size_t c = 0; c < samples; ++c) out.sampled = std::min(out.sampled, ratio(random_regular(speeds, rng)));

  // prefix_i = Σ_j w_j * min(i, j) / S_j over gap weights w on the simplex, so
  // minimizing s is the LP  min v  s.t.  A w <= v, Σ w = 1, w >= 0.
  std::vector<double> cumulative(m);
  std::partial_sum(speeds.begin(), speeds.end(), cumulative.begin());
  Eigen::MatrixXd a(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          static_cast<double>(std::min(i, j) + 1) / cumulative[j] / f[i];

  // A vertex fixes the equality plus m of the 2m inequalities.
  const std::size_t vars = m + 1;
  std::vector<bool> pick(2 * m, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(m), true);
  double best = kInf;
  do {
    Eigen::MatrixXd lhs = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(vars), static_cast<Eigen::Index>(vars));
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(vars));
    Eigen::Index row = 0;
    for (std::size_t k = 0; k < 2 * m; ++k) {
      if (!pick[k]) continue;
      if (k < m) {
        lhs.row(row).head(static_cast<Eigen::Index>(m)) = a.row(static_cast<Eigen::Index>(k));
        lhs(row, static_cast<Eigen::Index>(m)) = -1.0;
      } else {
        lhs(row, static_cast<Eigen::Index>(k - m)) = 1.0;
      }
      ++row;
    }
    lhs.row(row).head(static_cast<Eigen::Index>(m)).setOnes();
    rhs(row) = 1.0;

    const Eigen::FullPivLU<Eigen::MatrixXd> lu(lhs);
    if (!lu.isInvertible()) continue;
    const Eigen::VectorXd x = lu.solve(rhs);
    const Eigen::VectorXd w = x.head(static_cast<Eigen::Index>(m));
    const double v = x(static_cast<Eigen::Index>(m));
    if (w.minCoeff() < -1e-12) continue;
    if (((a * w).array() - v).maxCoeff() > 1e-12) continue;
    best = std::min(best, v);
  } while (std::prev_permutation(pick.begin(), pick.end()));

  out.refined = std::min(best, out.sampled);
  return out;
}

}  // namespace simsched
