#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "simsched/instance.hpp"
#include "simsched/json_text.hpp"
#include "simsched/load_vector.hpp"
#include "simsched/oracle.hpp"
#include "simsched/random.hpp"

namespace simsched {

/// Related speeds in normal form, with Σs/s_1 split as t + Δ.
///
/// Δ is snapped to 0 when Σs/s_1 is within 1e-12 of an integer, so profiles
/// such as (3,1,1,1) give t = 2, Δ = 0 exactly. s_{m+1} is taken as 0.
class SpeedProfile {
 public:
  /// Sorts into non-increasing order; throws std::invalid_argument on an empty
  /// or non-positive speed list.
  explicit SpeedProfile(std::vector<double> speeds);

  [[nodiscard]] const std::vector<double>& speeds() const { return speeds_; }
  [[nodiscard]] std::size_t size() const { return speeds_.size(); }
  [[nodiscard]] double fastest() const { return speeds_.front(); }
  [[nodiscard]] double total() const { return total_; }
  /// Σs / s_1.
  [[nodiscard]] double capacity_ratio() const { return total_ / speeds_.front(); }
  [[nodiscard]] int t() const { return t_; }
  [[nodiscard]] double delta() const { return delta_; }
  /// s_k for 1-based k, with s_{m+1} = 0.
  [[nodiscard]] double speed(std::size_t k) const;

 private:
  std::vector<double> speeds_;
  double total_ = 0.0;
  int t_ = 1;
  double delta_ = 0.0;
};

/// Root that sizes the big job of gen_rm_instance:
/// (sqrt(b^2 + 4m(m-1)(m-2)) - b) / 2 with b = m^3 - m^2 - m - 2.
double r_m(int m);

/// The two lower bounds on s* for the r_m instance, one per placement of the
/// big job. With the printed r_m they do not coincide; only their minimum is
/// claimed to exceed 1.
struct RmBranchBounds {
  double big_job_alone = 1.0;   // m(m-1)^2 / (m(m-1)^2 - (m-2-r_m))
  double big_job_shared = 1.0;  // 1 + r_m / (m(m-1))
  [[nodiscard]] double min() const { return big_job_alone < big_job_shared ? big_job_alone : big_job_shared; }
};
RmBranchBounds rm_branch_bounds(int m);

/// Exact prefix envelope f(i) for a unit fractional job on related machines.
/// `prefix_len` is 1-based. The boundary i = Σs/s_1 uses the first branch.
double closed_f(const SpeedProfile& profile, std::size_t prefix_len);

/// Whole envelope, scaled by the merged job size `work`.
PrefixEnvelope closed_envelope(const SpeedProfile& profile, double work = 1.0);

/// Best simultaneous ratio for fractional jobs on fixed related speeds:
/// Σs / (Σ_{i<=t} s_i + Δ s_{t+1}).
double war_q_fp(const SpeedProfile& profile);

/// Supremum of war_q_fp over all speed profiles on m machines: (sqrt(m)+1)/2.
double war_q_fp_sup(int m);

/// Random speeds on m machines in normal form. Mixes one-fast-rest-equal
/// profiles (the extremal family), uniform, exponential and small-integer draws.
std::vector<double> random_speeds(std::size_t m, Rng& rng);

/// Strong ratio bound: m, Σs/s_1 or +inf.
double sar_value(const MachineEnv& env);

/// Envelope for the instance when a method applies without enumeration:
/// FP identical / related (closed form) and PP identical (MCR prefix sums).
/// Returns nullopt otherwise.
std::optional<PrefixEnvelope> analytic_envelope(const Instance& inst);

/// Envelope by the cheapest applicable method: analytic if available, exact
/// enumeration for NP. Throws UnsupportedError when neither applies and
/// BudgetExceeded when enumeration is too large.
PrefixEnvelope instance_envelope(const Instance& inst, const EnumerationBudget& budget = {});

class UnsupportedError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Bound verification

struct ClaimParams {
  int m = 3;
  std::uint64_t seed = 0;
  EnumerationBudget budget;
  std::vector<double> speeds;  // used by the q_fp_* claims when non-empty
  int trials = 0;              // 0 selects the claim's default
};

struct BoundReport {
  std::string claim;
  ordered_json params = ordered_json::object();
  double measured = 0.0;
  double bound = 0.0;
  bool pass = false;
  bool asserted = true;  // false for demonstrations that are reported only
  double seconds = 0.0;

  [[nodiscard]] std::string verdict() const { return pass ? "pass" : "fail"; }
  /// One JSON line; `seconds` is written as 0 unless `with_timing`.
  [[nodiscard]] std::string to_json_line(bool with_timing = false) const;
};

class UnknownClaim : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Every claim id, sorted.
const std::vector<std::string>& claim_ids();

/// Runs one experiment. Deterministic per seed.
/// Throws UnknownClaim or BudgetExceeded.
BoundReport verify_claim(const std::string& claim, const ClaimParams& params);

// ---------------------------------------------------------------------------
// Table of weak simultaneous approximation ratios

struct TableCell {
  std::string env;   // "identical" | "related" | "unrelated"
  std::string mode;  // "NP" | "PP" | "FP"
  std::string claimed;
  double lower = 1.0;  // claimed corridor; lower_strict marks "1 < WAR"
  double upper = 1.0;
  bool lower_strict = false;
  ordered_json evidence = ordered_json::object();
  std::string verdict;  // "pass" | "fail" | "skipped: budget"
};

struct Table1Report {
  int m = 1;
  std::uint64_t seed = 0;
  std::vector<TableCell> cells;

  [[nodiscard]] ordered_json to_json() const;
  [[nodiscard]] std::string to_text() const;
  [[nodiscard]] bool all_pass() const;
};

Table1Report table1_report(int m, std::uint64_t seed, const EnumerationBudget& budget = {});

}  // namespace simsched
