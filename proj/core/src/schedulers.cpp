#include "simsched/schedulers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "simsched/analysis.hpp"

namespace simsched {

namespace {

bool non_increasing(std::span<const double> v) {
  return std::is_sorted(v.begin(), v.end(), std::greater<>());
}

void require_speeds(std::span<const double> speeds, const char* what) {
  if (speeds.empty()) throw ScheduleError(std::string(what) + ": empty speed list");
  if (std::any_of(speeds.begin(), speeds.end(), [](double s) { return !(s > 0.0) || !std::isfinite(s); }))
    throw ScheduleError(std::string(what) + ": speeds must be positive");
  if (!non_increasing(speeds)) throw ScheduleError(std::string(what) + ": speeds must be non-increasing");
}

}  // namespace

NonPreemptiveSchedule list_schedule(const Instance& inst, std::span<const std::size_t> order) {
  if (inst.kind() == EnvKind::Unrelated) throw ScheduleError("list scheduling needs identical or related machines");
  const std::size_t n = inst.job_count();
  if (order.size() != n) throw ScheduleError("order must list every job once");
  std::vector<bool> seen(n, false);
  for (std::size_t j : order) {
    if (j >= n || seen[j]) throw ScheduleError("order must be a permutation of the jobs");
    seen[j] = true;
  }

  const std::size_t m = inst.machines();
  std::vector<double> load(m, 0.0);
  NonPreemptiveSchedule s{std::vector<std::size_t>(n, 0)};
  for (std::size_t j : order) {
    std::size_t best = 0;
    double best_finish = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      const double finish = load[i] + inst.processing_time(i, j);
      if (finish < best_finish) {
        best_finish = finish;
        best = i;
      }
    }
    load[best] = best_finish;
    s.assignment[j] = best;
  }
  return s;
}

NonPreemptiveSchedule lpt(const Instance& inst) {
  if (inst.kind() == EnvKind::Unrelated) throw ScheduleError("LPT needs identical or related machines");
  std::vector<std::size_t> order(inst.job_count());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return inst.jobs[a] > inst.jobs[b]; });
  return list_schedule(inst, order);
}

PreemptiveSchedule mcnaughton(std::span<const double> jobs, std::size_t machines, double deadline,
                              const Tolerance& tol) {
  if (machines == 0) throw ScheduleError("mcnaughton: no machines");
  const double total = std::accumulate(jobs.begin(), jobs.end(), 0.0);
  const double longest = jobs.empty() ? 0.0 : *std::max_element(jobs.begin(), jobs.end());
  if (!tol.leq(longest, deadline) || !tol.leq(total / static_cast<double>(machines), deadline)) {
    throw ScheduleError("mcnaughton: deadline below max(max p_j, sum p_j / m)");
  }

  PreemptiveSchedule s;
  s.segments.resize(machines);
  const double slack = tol.slack(deadline, deadline);
  std::size_t i = 0;
  double t = 0.0;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    double rest = jobs[j];
    while (rest > 0.0) {
      if (deadline - t <= slack && i + 1 < machines) {
        ++i;
        t = 0.0;
      }
      const double room = deadline - t;
      if (rest <= room + slack || i + 1 == machines) {
        s.segments[i].push_back({j, t, t + rest});
        t += rest;
        rest = 0.0;
      } else {
        s.segments[i].push_back({j, t, deadline});
        rest -= room;
        ++i;
        t = 0.0;
      }
    }
  }
  return s;
}

PreemptiveSchedule mcr(const Instance& inst) {
  if (inst.kind() != EnvKind::Identical) throw ScheduleError("mcr needs identical machines");
  const Tolerance tol;
  PreemptiveSchedule s;
  s.segments.resize(inst.machines());

  std::vector<std::size_t> free_machines(inst.machines());
  std::iota(free_machines.begin(), free_machines.end(), 0);
  std::vector<std::size_t> left(inst.job_count());
  std::iota(left.begin(), left.end(), 0);

  while (!left.empty()) {
    double total = 0.0;
    for (std::size_t j : left) total += inst.jobs[j];
    const auto longest = std::max_element(left.begin(), left.end(), [&](std::size_t a, std::size_t b) {
      return inst.jobs[a] < inst.jobs[b];
    });
    const double average = total / static_cast<double>(free_machines.size());
    if (tol.leq(inst.jobs[*longest], average)) {
      std::vector<double> sizes;
      sizes.reserve(left.size());
      for (std::size_t j : left) sizes.push_back(inst.jobs[j]);
      const auto part = mcnaughton(sizes, free_machines.size(), average, tol);
      for (std::size_t k = 0; k < free_machines.size(); ++k) {
        for (auto seg : part.segments[k]) {
          seg.job = left[seg.job];
          s.segments[free_machines[k]].push_back(seg);
        }
      }
      break;
    }
    s.segments[free_machines.front()].push_back({*longest, 0.0, inst.jobs[*longest]});
    free_machines.erase(free_machines.begin());
    left.erase(longest);
  }
  return s;
}

FractionalSchedule uniform_fractional(const Instance& inst) {
  if (inst.kind() != EnvKind::Identical) throw ScheduleError("uniform fractional schedule needs identical machines");
  const std::size_t m = inst.machines();
  return {std::vector<std::vector<double>>(m, std::vector<double>(inst.job_count(), 1.0 / static_cast<double>(m)))};
}

FractionalSchedule optimal_regular_fractional(std::span<const double> speeds) {
  require_speeds(speeds, "optimal_regular_fractional");
  const SpeedProfile profile(std::vector<double>(speeds.begin(), speeds.end()));
  const auto t = static_cast<std::size_t>(profile.t());
  double denom = 0.0;
  for (std::size_t k = 1; k <= t; ++k) denom += profile.speed(k);
  denom += profile.delta() * profile.speed(t + 1);

  FractionalSchedule s{std::vector<std::vector<double>>(speeds.size(), std::vector<double>(1, 0.0))};
  for (std::size_t k = 1; k <= t; ++k) s.split[k - 1][0] = profile.speed(k) / denom;
  if (t < speeds.size()) s.split[t][0] = profile.delta() * profile.speed(t + 1) / denom;
  return s;
}

FractionalSchedule regularize_fractional(std::span<const double> speeds, const LoadVector& target) {
  require_speeds(speeds, "regularize_fractional");
  if (target.size() != speeds.size()) throw ScheduleError("regularize_fractional: target length differs from speeds");
  const LoadVector sorted = sorted_desc(target);
  const Tolerance tol;

  FractionalSchedule s{std::vector<std::vector<double>>(speeds.size(), std::vector<double>(1, 0.0))};
  double placed = 0.0;
  for (std::size_t i = 0; i < speeds.size(); ++i) {
    const double share = speeds[i] * sorted[i];
    if (tol.leq(1.0, placed + share)) {
      s.split[i][0] = std::max(0.0, 1.0 - placed);
      return s;
    }
    s.split[i][0] = share;
    placed += share;
  }
  throw ScheduleError("regularize_fractional: target loads cannot process a unit job");
}

LoadVector merged_loads(std::span<const double> speeds, const FractionalSchedule& unit_split) {
  if (unit_split.split.size() != speeds.size()) throw ScheduleError("merged_loads: split has wrong machine count");
  std::vector<double> loads(speeds.size());
  for (std::size_t i = 0; i < speeds.size(); ++i) {
    if (unit_split.split[i].size() != 1) throw ScheduleError("merged_loads: expected a single job column");
    loads[i] = unit_split.split[i][0] / speeds[i];
  }
  return LoadVector(std::move(loads));
}

FractionalSchedule expand_merged_split(const FractionalSchedule& unit_split, std::size_t jobs) {
  FractionalSchedule s;
  s.split.reserve(unit_split.split.size());
  for (const auto& row : unit_split.split) s.split.emplace_back(jobs, row.at(0));
  return s;
}

NonPreemptiveSchedule min_work_assignment(const Instance& inst) {
  const std::size_t n = inst.job_count();
  NonPreemptiveSchedule s{std::vector<std::size_t>(n, 0)};
  for (std::size_t j = 0; j < n; ++j) {
    double best = inst.processing_time(0, j);
    for (std::size_t i = 1; i < inst.machines(); ++i) {
      const double p = inst.processing_time(i, j);
      if (p < best) {
        best = p;
        s.assignment[j] = i;
      }
    }
  }
  return s;
}

Instance discretize(std::span<const double> speeds, double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw ScheduleError("discretize: epsilon must be positive");
  require_speeds(speeds, "discretize");
  auto count = static_cast<std::size_t>(std::ceil(1.0 / epsilon));
  if (count > 1 && 1.0 / static_cast<double>(count - 1) <= epsilon) --count;
  count = std::max<std::size_t>(count, 1);
  Instance inst{Related{std::vector<double>(speeds.begin(), speeds.end())}, Mode::NP,
                std::vector<double>(count, 1.0 / static_cast<double>(count)), "discretized"};
  return inst;
}

}  // namespace simsched
