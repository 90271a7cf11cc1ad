#include "simsched/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "simsched/json_text.hpp"

namespace simsched {

namespace {

void require_machines(std::size_t got, const Instance& inst) {
  if (got != inst.machines()) {
    throw ScheduleError("schedule has " + std::to_string(got) + " machines, instance has " +
                        std::to_string(inst.machines()));
  }
}

LoadVector loads_np(const NonPreemptiveSchedule& s, const Instance& inst) {
  if (s.assignment.size() != inst.job_count()) {
    throw ScheduleError("assignment covers " + std::to_string(s.assignment.size()) + " jobs, instance has " +
                        std::to_string(inst.job_count()));
  }
  std::vector<double> loads(inst.machines(), 0.0);
  for (std::size_t j = 0; j < s.assignment.size(); ++j) {
    const std::size_t i = s.assignment[j];
    if (i >= loads.size()) throw ScheduleError("job " + std::to_string(j) + " assigned to unknown machine");
    loads[i] += inst.processing_time(i, j);
  }
  return LoadVector(std::move(loads));
}

LoadVector loads_pp(const PreemptiveSchedule& s, const Instance& inst) {
  require_machines(s.segments.size(), inst);
  std::vector<double> loads(inst.machines(), 0.0);
  for (std::size_t i = 0; i < s.segments.size(); ++i) {
    for (const auto& seg : s.segments[i]) {
      if (seg.job >= inst.job_count()) throw ScheduleError("segment references unknown job");
      loads[i] = std::max(loads[i], seg.end);
    }
  }
  return LoadVector(std::move(loads));
}

LoadVector loads_fp(const FractionalSchedule& s, const Instance& inst, const Tolerance& tol) {
  require_machines(s.split.size(), inst);
  const std::size_t n = inst.job_count();
  for (const auto& row : s.split) {
    if (row.size() != n) throw ScheduleError("split row length differs from job count");
  }
  for (std::size_t j = 0; j < n; ++j) {
    double col = 0.0;
    for (const auto& row : s.split) {
      if (row[j] < -tol.abs_eps || row[j] > 1.0 + tol.abs_eps) throw ScheduleError("fraction outside [0,1]");
      col += row[j];
    }
    if (!tol.equal(col, 1.0)) {
      throw ScheduleError("fractions of job " + std::to_string(j) + " sum to " + format_number(col));
    }
  }
  std::vector<double> loads(inst.machines(), 0.0);
  for (std::size_t i = 0; i < loads.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) loads[i] += s.split[i][j] * inst.processing_time(i, j);
  for (double& v : loads) v = std::max(v, 0.0);
  return LoadVector(std::move(loads));
}

}  // namespace

LoadVector load_vector(const Schedule& sched, const Instance& inst, const Tolerance& tol) {
  return std::visit(
      [&](const auto& s) -> LoadVector {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, NonPreemptiveSchedule>) return loads_np(s, inst);
        else if constexpr (std::is_same_v<T, PreemptiveSchedule>) return loads_pp(s, inst);
        else return loads_fp(s, inst, tol);
      },
      sched);
}

std::vector<std::string> check_preemptive(const PreemptiveSchedule& sched, const Instance& inst,
                                          const Tolerance& tol) {
  std::vector<std::string> issues;
  if (sched.segments.size() != inst.machines()) {
    issues.push_back("machine count mismatch");
    return issues;
  }
  const std::size_t n = inst.job_count();
  // Fraction of each job completed; a segment of length d on machine i
  // processes d / processing_time(i, j) of job j.
  std::vector<double> done(n, 0.0);
  std::vector<std::vector<std::pair<double, double>>> by_job(n);

  for (std::size_t i = 0; i < sched.segments.size(); ++i) {
    const auto& segs = sched.segments[i];
    for (std::size_t k = 0; k < segs.size(); ++k) {
      const auto& seg = segs[k];
      if (seg.job >= n) {
        issues.push_back("machine " + std::to_string(i) + ": unknown job " + std::to_string(seg.job));
        continue;
      }
      if (!(seg.start < seg.end) || seg.start < -tol.abs_eps) {
        issues.push_back("machine " + std::to_string(i) + ": empty or negative segment");
      }
      if (k > 0 && !tol.leq(segs[k - 1].end, seg.start)) {
        issues.push_back("machine " + std::to_string(i) + ": overlapping segments");
      }
      done[seg.job] += seg.length() / inst.processing_time(i, seg.job);
      by_job[seg.job].emplace_back(seg.start, seg.end);
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    auto& iv = by_job[j];
    std::sort(iv.begin(), iv.end());
    for (std::size_t k = 1; k < iv.size(); ++k) {
      if (!tol.leq(iv[k - 1].second, iv[k].first)) {
        issues.push_back("job " + std::to_string(j) + ": processed on two machines at once");
        break;
      }
    }
    if (!tol.equal(done[j], 1.0)) {
      issues.push_back("job " + std::to_string(j) + ": processed fraction " + format_number(done[j]));
    }
  }
  return issues;
}

std::string serialize_schedule(const Schedule& sched) {
  ordered_json doc;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, NonPreemptiveSchedule>) {
          auto& a = doc["assignment"] = ordered_json::array();
          for (std::size_t i : s.assignment) a.push_back(i + 1);
        } else if constexpr (std::is_same_v<T, PreemptiveSchedule>) {
          auto& machines = doc["segments"] = ordered_json::array();
          for (const auto& segs : s.segments) {
            auto row = ordered_json::array();
            for (const auto& seg : segs) {
              ordered_json e;
              e["job"] = seg.job + 1;
              e["start"] = seg.start;
              e["end"] = seg.end;
              row.push_back(std::move(e));
            }
            machines.push_back(std::move(row));
          }
        } else {
          doc["split"] = s.split;
        }
      },
      sched);
  return dump_json(doc);
}

Schedule parse_schedule(std::string_view json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const ordered_json::parse_error& e) {
    throw ScheduleError(std::string("malformed JSON: ") + e.what());
  }
  const auto index = [](const ordered_json& v, const std::string& path) -> std::size_t {
    if (!v.is_number_integer() || v.get<long long>() < 1) throw ScheduleError(path + ": expected an integer >= 1");
    return static_cast<std::size_t>(v.get<long long>() - 1);
  };
  const auto number = [](const ordered_json& v, const std::string& path) -> double {
    if (!v.is_number()) throw ScheduleError(path + ": expected a number");
    return v.get<double>();
  };

  if (doc.contains("assignment")) {
    NonPreemptiveSchedule s;
    const auto& a = doc["assignment"];
    if (!a.is_array()) throw ScheduleError("/assignment: expected an array");
    for (std::size_t j = 0; j < a.size(); ++j) s.assignment.push_back(index(a[j], "/assignment/" + std::to_string(j)));
    return s;
  }
  if (doc.contains("segments")) {
    PreemptiveSchedule s;
    const auto& machines = doc["segments"];
    if (!machines.is_array()) throw ScheduleError("/segments: expected an array");
    for (std::size_t i = 0; i < machines.size(); ++i) {
      const std::string path = "/segments/" + std::to_string(i);
      if (!machines[i].is_array()) throw ScheduleError(path + ": expected an array");
      auto& row = s.segments.emplace_back();
      for (std::size_t k = 0; k < machines[i].size(); ++k) {
        const auto& e = machines[i][k];
        const std::string p = path + "/" + std::to_string(k);
        if (!e.is_object() || !e.contains("job") || !e.contains("start") || !e.contains("end"))
          throw ScheduleError(p + ": expected {job, start, end}");
        row.push_back({index(e["job"], p + "/job"), number(e["start"], p + "/start"), number(e["end"], p + "/end")});
      }
    }
    return s;
  }
  if (doc.contains("split")) {
    FractionalSchedule s;
    const auto& rows = doc["split"];
    if (!rows.is_array()) throw ScheduleError("/split: expected an array");
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!rows[i].is_array()) throw ScheduleError("/split/" + std::to_string(i) + ": expected an array");
      auto& row = s.split.emplace_back();
      for (std::size_t j = 0; j < rows[i].size(); ++j)
        row.push_back(number(rows[i][j], "/split/" + std::to_string(i) + "/" + std::to_string(j)));
    }
    return s;
  }
  throw ScheduleError("/: expected one of assignment, segments, split");
}

}  // namespace simsched
