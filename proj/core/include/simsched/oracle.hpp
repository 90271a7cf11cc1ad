#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "simsched/instance.hpp"
#include "simsched/load_vector.hpp"
#include "simsched/schedule.hpp"

namespace simsched {

struct EnumerationBudget {
  std::uint64_t max_states = 10'000'000;
};

/// Thrown when m^n exceeds the budget. `required` saturates at UINT64_MAX.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::uint64_t required, std::uint64_t allowed);
  [[nodiscard]] std::uint64_t required() const { return required_; }
  [[nodiscard]] std::uint64_t allowed() const { return allowed_; }

 private:
  std::uint64_t required_;
  std::uint64_t allowed_;
};

/// m^n, saturating.
std::uint64_t assignment_count(const Instance& inst);

/// Called once per assignment with the assignment and its per-machine loads.
/// Loads are summed in job-index order, so they match load_vector() exactly.
using AssignmentVisitor = std::function<void(std::span<const std::size_t>, std::span<const double>)>;

/// Visits every non-preemptive assignment in lexicographic order (job 0 is the
/// most significant digit). Returns the number of visits.
std::uint64_t enumerate_assignments(const Instance& inst, const EnumerationBudget& budget,
                                    const AssignmentVisitor& visitor);

/// The slice of enumerate_assignments() with job 0 fixed on `first_machine`.
/// Slices in increasing machine order concatenate to the full enumeration.
std::uint64_t enumerate_slice(const Instance& inst, std::size_t first_machine, const AssignmentVisitor& visitor);

/// Enumeration parallelism. Results never depend on `workers`.
struct OracleOptions {
  EnumerationBudget budget;
  unsigned workers = 1;
};

/// f(i) = min over assignments of the i-th prefix sum of sorted loads.
PrefixEnvelope brute_prefix_envelope(const Instance& inst, const OracleOptions& opt = {});

struct StarResult {
  double value = 1.0;
  NonPreemptiveSchedule witness;
  LoadVector witness_loads{0.0};
};

/// Exact s*: min over assignments of s against the enumerated envelope.
/// The witness is the lexicographically smallest minimizer.
StarResult brute_s_star(const Instance& inst, const OracleOptions& opt = {});

/// Exact c*: min over distinct sorted load vectors X of max over Y of
/// ratio_c_pair(X, Y). The double loop is budgeted on (distinct vectors)^2.
StarResult brute_c_star(const Instance& inst, const OracleOptions& opt = {});

/// c(X) for one load vector against every assignment; witness_vector is the
/// binding competitor.
RatioReport brute_c_of(const Instance& inst, const LoadVector& x, const OracleOptions& opt = {});

/// Lexicographically smallest assignment minimizing the makespan.
NonPreemptiveSchedule brute_makespan_min(const Instance& inst, const OracleOptions& opt = {});

/// Lexicographically smallest assignment maximizing the minimum load.
NonPreemptiveSchedule brute_cover_max(const Instance& inst, const OracleOptions& opt = {});

/// Feasible preemptive schedules on identical machines: jobs are split into
/// 1..m groups, groups get disjoint machine sets, and each group is wrapped
/// with McNaughton at a random feasible deadline. Deterministic per seed.
std::vector<PreemptiveSchedule> sample_preemptive_schedules(const Instance& inst, std::uint64_t seed,
                                                            std::size_t count);
std::vector<LoadVector> sample_preemptive_loads(const Instance& inst, std::uint64_t seed, std::size_t count);

/// Random regular load vectors for a unit fractional job: work shares drawn
/// uniformly from the simplex, loads sorted non-increasing onto the fastest
/// machines, then rescaled so that Σ s_k L_k = 1.
std::vector<LoadVector> sample_regular_loads(std::span<const double> speeds, std::uint64_t seed, std::size_t count);

/// Numeric upper estimate of f(prefix_len) for a unit fractional job on
/// related machines: best of `samples` random regular vectors, then pairwise
/// mass-transfer descent over the load gaps. Independent of the closed form.
double numeric_fractional_envelope(std::span<const double> speeds, std::size_t prefix_len, std::uint64_t seed,
                                   std::size_t samples = 100'000);

struct RegularRatioSearch {
  double sampled = 0.0;  // best s over the random regular vectors
  double refined = 0.0;  // exact minimum over all regular vectors (vertex enumeration)
};

/// Minimum of s(L) = max_i prefix_i(L) / f[i] over regular unit-job loads, with
/// `f` supplied by the caller. Refinement solves the small linear program
/// exactly and is limited to at most 10 machines.
RegularRatioSearch numeric_min_regular_ratio(std::span<const double> speeds, std::span<const double> f,
                                             std::uint64_t seed, std::size_t samples = 100'000);

}  // namespace simsched
