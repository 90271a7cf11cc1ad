#include "simsched/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "simsched/schedulers.hpp"

namespace simsched {

SpeedProfile::SpeedProfile(std::vector<double> speeds) : speeds_(std::move(speeds)) {
  if (speeds_.empty()) throw std::invalid_argument("SpeedProfile: empty speed list");
  for (double s : speeds_) {
    if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("SpeedProfile: speeds must be positive");
  }
  std::sort(speeds_.begin(), speeds_.end(), std::greater<>());
  total_ = std::accumulate(speeds_.begin(), speeds_.end(), 0.0);

  const double x = capacity_ratio();
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= 1e-12 * std::max(1.0, x)) {
    t_ = static_cast<int>(nearest);
    delta_ = 0.0;
  } else {
    t_ = static_cast<int>(std::floor(x));
    delta_ = x - std::floor(x);
  }
  t_ = std::clamp(t_, 1, static_cast<int>(speeds_.size()));
  if (t_ == static_cast<int>(speeds_.size())) delta_ = 0.0;
}

double SpeedProfile::speed(std::size_t k) const {
  if (k == 0) throw std::out_of_range("SpeedProfile::speed is 1-based");
  return k <= speeds_.size() ? speeds_[k - 1] : 0.0;
}

double r_m(int m) {
  if (m < 3) throw std::invalid_argument("r_m needs m >= 3");
  const double md = m;
  const double b = md * md * md - md * md - md - 2.0;
  const double r = (std::sqrt(b * b + 4.0 * md * (md - 1.0) * (md - 2.0)) - b) / 2.0;
  if (!(r > 0.0 && r < md - 2.0)) throw std::logic_error("r_m outside (0, m-2)");
  return r;
}

RmBranchBounds rm_branch_bounds(int m) {
  const double r = r_m(m);
  const double md = m;
  const double big = md * (md - 1.0) * (md - 1.0);
  return RmBranchBounds{big / (big - (md - 2.0 - r)), 1.0 + r / (md * (md - 1.0))};
}

double closed_f(const SpeedProfile& profile, std::size_t prefix_len) {
  if (prefix_len < 1 || prefix_len > profile.size()) throw std::out_of_range("closed_f: prefix length out of range");
  const double i = static_cast<double>(prefix_len);
  if (i <= profile.capacity_ratio() + 1e-12) return i / profile.total();
  return 1.0 / profile.fastest();
}

PrefixEnvelope closed_envelope(const SpeedProfile& profile, double work) {
  PrefixEnvelope env{std::vector<double>(profile.size()), PrefixEnvelope::Provenance::ClosedForm};
  for (std::size_t i = 1; i <= profile.size(); ++i) env.f[i - 1] = work * closed_f(profile, i);
  return env;
}

double war_q_fp(const SpeedProfile& profile) {
  const auto t = static_cast<std::size_t>(profile.t());
  double denom = profile.delta() * profile.speed(t + 1);
  for (std::size_t k = 1; k <= t; ++k) denom += profile.speed(k);
  return profile.total() / denom;
}

double war_q_fp_sup(int m) {
  if (m < 1) throw std::invalid_argument("war_q_fp_sup needs m >= 1");
  return (std::sqrt(static_cast<double>(m)) + 1.0) / 2.0;
}

std::vector<double> random_speeds(std::size_t m, Rng& rng) {
  std::vector<double> s(m);
  switch (rng.index(4)) {
    case 0: {
      const double fast = 1.0 + rng.uniform() * 2.0 * (std::sqrt(static_cast<double>(m)) + 1.0);
      std::fill(s.begin(), s.end(), 1.0);
      s.front() = fast;
      break;
    }
    case 1:
      for (double& v : s) v = 1.0 - rng.uniform();
      break;
    case 2:
      for (double& v : s) v = rng.exponential();
      break;
    default:
      for (double& v : s) v = static_cast<double>(rng.uniform_int(1, 5));
      break;
  }
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

double sar_value(const MachineEnv& env) {
  return std::visit(
      [](const auto& e) -> double {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, Identical>) {
          return static_cast<double>(e.m);
        } else if constexpr (std::is_same_v<T, Related>) {
          return SpeedProfile(e.speeds).capacity_ratio();
        } else {
          return std::numeric_limits<double>::infinity();
        }
      },
      env);
}

std::optional<PrefixEnvelope> analytic_envelope(const Instance& inst) {
  const EnvKind kind = inst.kind();
  if (inst.mode == Mode::FP && kind == EnvKind::Identical) {
    return closed_envelope(SpeedProfile(std::vector<double>(inst.machines(), 1.0)), inst.total_work());
  }
  if (inst.mode == Mode::FP && kind == EnvKind::Related) {
    return closed_envelope(SpeedProfile(std::get<Related>(inst.env).speeds), inst.total_work());
  }
  if (inst.mode == Mode::PP && kind == EnvKind::Identical) {
    const LoadVector loads = load_vector(Schedule{mcr(inst)}, inst);
    return PrefixEnvelope{prefix_sums(sorted_desc(loads)), PrefixEnvelope::Provenance::ClosedForm};
  }
  return std::nullopt;
}

PrefixEnvelope instance_envelope(const Instance& inst, const EnumerationBudget& budget) {
  if (auto env = analytic_envelope(inst)) return *env;
  if (inst.mode == Mode::NP) return brute_prefix_envelope(inst, OracleOptions{budget, 1});
  throw UnsupportedError("no envelope method for " + to_string(inst.kind()) + " machines in " +
                         to_string(inst.mode) + " mode");
}

}  // namespace simsched
