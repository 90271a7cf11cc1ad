#include "simsched/load_vector.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace simsched {

namespace {

void require_same_length(const LoadVector& x, const LoadVector& y, const char* what) {
  if (x.size() != y.size()) {
    throw DimensionError(std::string(what) + ": length mismatch (" + std::to_string(x.size()) +
                         " vs " + std::to_string(y.size()) + ")");
  }
}

}  // namespace

double Tolerance::slack(double a, double b) const {
  return std::max(abs_eps, rel_eps * std::max(std::abs(a), std::abs(b)));
}

bool Tolerance::leq(double a, double b) const {
  if (a <= b) return true;
  if (std::isinf(a) || std::isinf(b)) return false;
  return a <= b + slack(a, b);
}

LoadVector::LoadVector(std::vector<double> loads) : loads_(std::move(loads)) {
  if (loads_.empty()) throw std::invalid_argument("LoadVector: at least one machine required");
  for (double v : loads_) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("LoadVector: loads must be finite and nonnegative");
    }
  }
}

double LoadVector::total() const { return std::accumulate(loads_.begin(), loads_.end(), 0.0); }
double LoadVector::max() const { return *std::max_element(loads_.begin(), loads_.end()); }
double LoadVector::min() const { return *std::min_element(loads_.begin(), loads_.end()); }

std::string to_string(PrefixEnvelope::Provenance p) {
  switch (p) {
    case PrefixEnvelope::Provenance::ExactEnumeration: return "exact-enumeration";
    case PrefixEnvelope::Provenance::ClosedForm: return "closed-form";
    case PrefixEnvelope::Provenance::SampledLowerConfidence: return "sampled-lower-confidence";
  }
  return "unknown";
}

LoadVector sorted_desc(const LoadVector& x) {
  std::vector<double> v(x.begin(), x.end());
  std::sort(v.begin(), v.end(), std::greater<>());
  return LoadVector(std::move(v));
}

std::vector<double> prefix_sums(const LoadVector& x) {
  std::vector<double> out(x.size());
  std::partial_sum(x.begin(), x.end(), out.begin());
  return out;
}

LoadVector concat(const LoadVector& x, const LoadVector& y) {
  std::vector<double> v(x.begin(), x.end());
  v.insert(v.end(), y.begin(), y.end());
  return LoadVector(std::move(v));
}

double safe_ratio(double p, double q) {
  if (q == 0.0) return p == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return p / q;
}

bool coord_dominates(const LoadVector& x, const LoadVector& y, const Tolerance& tol) {
  require_same_length(x, y, "coord_dominates");
  const LoadVector sx = sorted_desc(x);
  const LoadVector sy = sorted_desc(y);
  for (std::size_t i = 0; i < sx.size(); ++i) {
    if (!tol.leq(sx[i], sy[i])) return false;
  }
  return true;
}

bool prefix_dominates(const LoadVector& x, const LoadVector& y, const Tolerance& tol) {
  require_same_length(x, y, "prefix_dominates");
  const auto px = prefix_sums(sorted_desc(x));
  const auto py = prefix_sums(sorted_desc(y));
  for (std::size_t i = 0; i < px.size(); ++i) {
    if (!tol.leq(px[i], py[i])) return false;
  }
  return true;
}

double ratio_c_pair(const LoadVector& x, const LoadVector& y) {
  require_same_length(x, y, "ratio_c_pair");
  const LoadVector sx = sorted_desc(x);
  const LoadVector sy = sorted_desc(y);
  double best = 0.0;
  for (std::size_t i = 0; i < sx.size(); ++i) best = std::max(best, safe_ratio(sx[i], sy[i]));
  return best;
}

double ratio_s_pair(const LoadVector& x, const LoadVector& y) {
  require_same_length(x, y, "ratio_s_pair");
  const auto px = prefix_sums(sorted_desc(x));
  const auto py = prefix_sums(sorted_desc(y));
  double best = 0.0;
  for (std::size_t i = 0; i < px.size(); ++i) best = std::max(best, safe_ratio(px[i], py[i]));
  return best;
}

RatioReport ratio_s_envelope(const LoadVector& x, const PrefixEnvelope& f, const Tolerance& tol) {
  if (f.size() != x.size()) {
    throw DimensionError("ratio_s_envelope: envelope has " + std::to_string(f.size()) +
                         " entries for " + std::to_string(x.size()) + " machines");
  }
  for (double v : f.f) {
    if (!(v > 0.0)) throw std::invalid_argument("ratio_s_envelope: non-positive envelope entry");
  }
  const auto px = prefix_sums(sorted_desc(x));
  std::vector<double> ratios(px.size());
  for (std::size_t i = 0; i < px.size(); ++i) ratios[i] = px[i] / f.f[i];

  RatioReport report;
  report.value = *std::max_element(ratios.begin(), ratios.end());
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    if (tol.leq(report.value, ratios[i])) {
      report.witness = i;
      break;
    }
  }
  return report;
}

}  // namespace simsched
