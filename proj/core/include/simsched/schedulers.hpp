#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "simsched/instance.hpp"
#include "simsched/load_vector.hpp"
#include "simsched/schedule.hpp"

namespace simsched {

/// List scheduling: jobs in `order` go one by one to the machine that would
/// finish them earliest (current load + p_j / s_i). Ties go to the lowest
/// machine index. Identical and related machines only; the related variant is
/// experimental. Throws ScheduleError for unrelated machines or a bad order.
NonPreemptiveSchedule list_schedule(const Instance& inst, std::span<const std::size_t> order);

/// List scheduling in non-increasing processing-time order, ties by job index.
NonPreemptiveSchedule lpt(const Instance& inst);

/// Wrap-around fill of `jobs` onto `machines` machines up to `deadline`.
/// Requires deadline >= max(max p_j, Σp_j / machines) (within `tol`);
/// throws ScheduleError otherwise. Job ids are indices into `jobs`.
PreemptiveSchedule mcnaughton(std::span<const double> jobs, std::size_t machines, double deadline,
                              const Tolerance& tol = {});

/// Preemptive schedule with s(S) = 1 on identical machines: repeatedly gives
/// the longest remaining job a machine of its own while it exceeds the average
/// remaining load, then wraps the rest evenly. Peeled jobs take the lowest
/// free machine index.
PreemptiveSchedule mcr(const Instance& inst);

/// Every job split evenly over all identical machines.
FractionalSchedule uniform_fractional(const Instance& inst);

/// Regular fractional schedule of one unit job attaining the best
/// simultaneous ratio on the given speeds (normal form required). The single
/// split column holds the work share s_i * L_i of each machine.
FractionalSchedule optimal_regular_fractional(std::span<const double> speeds);

/// Regular fractional schedule of one unit job whose loads are
/// coordinate-dominated by the sorted `target` loads. Throws ScheduleError when
/// the target cannot hold a unit of work.
FractionalSchedule regularize_fractional(std::span<const double> speeds, const LoadVector& target);

/// Loads of a single-job split column on related machines (work / speed).
LoadVector merged_loads(std::span<const double> speeds, const FractionalSchedule& unit_split);

/// Applies a single-job split column to every job of an instance.
FractionalSchedule expand_merged_split(const FractionalSchedule& unit_split, std::size_t jobs);

/// Each job on a machine where it is shortest, ties to the lowest index.
NonPreemptiveSchedule min_work_assignment(const Instance& inst);

/// NP related instance of ceil(1/epsilon) equal jobs with total size 1.
Instance discretize(std::span<const double> speeds, double epsilon);

}  // namespace simsched
