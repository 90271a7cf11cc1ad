#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "simsched/instance.hpp"
#include "simsched/load_vector.hpp"

namespace simsched {

/// Job j runs entirely on machine assignment[j] (0-based).
struct NonPreemptiveSchedule {
  std::vector<std::size_t> assignment;
};

struct Segment {
  std::size_t job = 0;
  double start = 0.0;
  double end = 0.0;

  [[nodiscard]] double length() const { return end - start; }
};

/// Per machine, time-ordered processing intervals.
struct PreemptiveSchedule {
  std::vector<std::vector<Segment>> segments;
};

/// split[i][j] is the fraction of job j processed on machine i.
struct FractionalSchedule {
  std::vector<std::vector<double>> split;
};

using Schedule = std::variant<NonPreemptiveSchedule, PreemptiveSchedule, FractionalSchedule>;

class ScheduleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Per-machine completion times. For preemptive schedules this is the end of
/// the last segment on each machine.
/// Throws ScheduleError on dimension mismatch or when a fraction column does
/// not sum to 1 within `tol`.
LoadVector load_vector(const Schedule& sched, const Instance& inst, const Tolerance& tol = {});

/// Every violated preemptive-schedule invariant, empty when feasible: per-machine
/// segments ordered and disjoint, no job on two machines at once, and each job
/// fully processed.
std::vector<std::string> check_preemptive(const PreemptiveSchedule& sched, const Instance& inst,
                                          const Tolerance& tol = {});

/// Schedule JSON. Machine indices in "assignment" and job ids in "segments"
/// are 1-based in the document.
std::string serialize_schedule(const Schedule& sched);
Schedule parse_schedule(std::string_view json_text);

}  // namespace simsched
