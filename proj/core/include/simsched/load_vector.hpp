#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace simsched {

/// Thrown when two vectors that must be compared coordinate-wise differ in length.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Comparison slack for dominance and ratio tests.
///
/// `a <= b` holds when `a <= b + max(abs_eps, rel_eps * max(|a|, |b|))`.
/// `Tolerance::exact()` turns both slacks off, which is what the integer
/// property suites use.
struct Tolerance {
  double abs_eps = 1e-12;
  double rel_eps = 1e-9;

  static constexpr Tolerance exact() { return {0.0, 0.0}; }

  [[nodiscard]] double slack(double a, double b) const;
  [[nodiscard]] bool leq(double a, double b) const;
  [[nodiscard]] bool equal(double a, double b) const { return leq(a, b) && leq(b, a); }
};

/// Per-machine completion loads of a schedule. Never empty, never negative.
class LoadVector {
 public:
  explicit LoadVector(std::vector<double> loads);
  LoadVector(std::initializer_list<double> loads) : LoadVector(std::vector<double>(loads)) {}

  [[nodiscard]] std::size_t size() const { return loads_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const { return loads_[i]; }
  [[nodiscard]] std::span<const double> values() const { return loads_; }
  [[nodiscard]] auto begin() const { return loads_.begin(); }
  [[nodiscard]] auto end() const { return loads_.end(); }

  [[nodiscard]] double total() const;
  [[nodiscard]] double max() const;
  [[nodiscard]] double min() const;

  friend bool operator==(const LoadVector&, const LoadVector&) = default;

 private:
  std::vector<double> loads_;
};

/// Infimum, over a feasible set, of the i-th prefix sum of sorted loads.
struct PrefixEnvelope {
  enum class Provenance { ExactEnumeration, ClosedForm, SampledLowerConfidence };

  std::vector<double> f;
  Provenance provenance = Provenance::ExactEnumeration;

  [[nodiscard]] std::size_t size() const { return f.size(); }
};

std::string to_string(PrefixEnvelope::Provenance p);

/// Value of s(X) or c(X) together with the binding coordinate.
///
/// `witness` is 0-based; JSON output reports it 1-based.
struct RatioReport {
  double value = 1.0;
  std::size_t witness = 0;
  std::optional<LoadVector> witness_vector;
};

LoadVector sorted_desc(const LoadVector& x);
std::vector<double> prefix_sums(const LoadVector& x);
LoadVector concat(const LoadVector& x, const LoadVector& y);

/// p/q with 0/0 = 0 and p/0 = +inf for p > 0.
double safe_ratio(double p, double q);

/// Sorted coordinate dominance: every coordinate of sorted(x) <= that of sorted(y).
bool coord_dominates(const LoadVector& x, const LoadVector& y, const Tolerance& tol = {});

/// Prefix-sum dominance of the sorted vectors.
bool prefix_dominates(const LoadVector& x, const LoadVector& y, const Tolerance& tol = {});

/// Least alpha with sorted(x) <= alpha * sorted(y) coordinate-wise.
double ratio_c_pair(const LoadVector& x, const LoadVector& y);

/// Least alpha with x prefix-dominated by alpha * y.
double ratio_s_pair(const LoadVector& x, const LoadVector& y);

/// max_i prefix_i(sorted x) / f(i). Ties within `tol` go to the smallest index.
RatioReport ratio_s_envelope(const LoadVector& x, const PrefixEnvelope& f,
                             const Tolerance& tol = {});

}  // namespace simsched
