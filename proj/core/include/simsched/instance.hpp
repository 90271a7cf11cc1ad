#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace simsched {

struct Identical {
  int m = 1;
};

/// Machine speeds; normal form is non-increasing.
struct Related {
  std::vector<double> speeds;
};

/// Processing times indexed `times[machine][job]`.
struct Unrelated {
  std::vector<std::vector<double>> times;
};

using MachineEnv = std::variant<Identical, Related, Unrelated>;

enum class EnvKind { Identical, Related, Unrelated };
enum class Mode { NP, PP, FP };

std::string to_string(EnvKind kind);
std::string to_string(Mode mode);
EnvKind parse_env_kind(std::string_view s);
Mode parse_mode(std::string_view s);

/// A scheduling instance. For unrelated machines `jobs` is empty and the
/// times matrix carries every processing time.
struct Instance {
  MachineEnv env;
  Mode mode = Mode::NP;
  std::vector<double> jobs;
  std::string label;

  [[nodiscard]] EnvKind kind() const;
  [[nodiscard]] std::size_t machines() const;
  [[nodiscard]] std::size_t job_count() const;

  /// Time machine `i` needs to process all of job `j`.
  [[nodiscard]] double processing_time(std::size_t i, std::size_t j) const;

  /// Sum of standard processing times (identical / related only).
  [[nodiscard]] double total_work() const;
};

/// Thrown by validation, generators and parsing. Carries every violation found.
class InstanceError : public std::invalid_argument {
 public:
  explicit InstanceError(std::vector<std::string> errors);
  [[nodiscard]] const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

struct ValidationResult {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  // Original machine index of each machine after related speeds are sorted.
  std::vector<std::size_t> speed_permutation;

  [[nodiscard]] bool ok() const { return errors.empty(); }
};

/// Checks every instance invariant and puts related speeds into normal form.
ValidationResult validate(Instance& inst);

/// validate() that throws InstanceError on any violation.
void validate_or_throw(Instance& inst);

Instance parse_instance(std::string_view json_text);
std::string serialize_instance(const Instance& inst);

/// Identical NP instance whose best simultaneous ratio exceeds 1:
/// m jobs of m-1, (m-1)(m-2) jobs of m, one job of (m-1)^2 + r_m.
Instance gen_rm_instance(int m);

/// FP related instance with one unit job and speeds (sqrt(m)+1, 1, ..., 1).
Instance gen_tight_related(int m);

/// 2x2 unrelated NP instance with times [[1, K], [K, 1]].
Instance gen_sar_unrelated(double k);

enum class Distribution { UniformInt, UniformReal, Exponential };

std::string to_string(Distribution d);
Distribution parse_distribution(std::string_view s);

/// Pure function of its arguments. Jobs (or matrix entries, or speeds) are drawn
/// from `dist`: uniform-int [1,20], uniform-real (0,1] or exponential(1).
Instance gen_random(EnvKind kind, Mode mode, int m, int n, std::uint64_t seed, Distribution dist);

/// Unrelated view of any instance, with times[i][j] = processing_time(i, j).
Instance as_unrelated(const Instance& inst);

}  // namespace simsched
