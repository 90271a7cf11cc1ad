#include "simsched/instance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "simsched/analysis.hpp"
#include "simsched/json_text.hpp"
#include "simsched/random.hpp"

namespace simsched {

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += "; ";
    out += p;
  }
  return out;
}

bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }

}  // namespace

std::string to_string(EnvKind kind) {
  switch (kind) {
    case EnvKind::Identical: return "identical";
    case EnvKind::Related: return "related";
    case EnvKind::Unrelated: return "unrelated";
  }
  return "unknown";
}

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::NP: return "NP";
    case Mode::PP: return "PP";
    case Mode::FP: return "FP";
  }
  return "unknown";
}

EnvKind parse_env_kind(std::string_view s) {
  if (s == "identical") return EnvKind::Identical;
  if (s == "related") return EnvKind::Related;
  if (s == "unrelated") return EnvKind::Unrelated;
  throw InstanceError({"unknown machine environment '" + std::string(s) + "'"});
}

Mode parse_mode(std::string_view s) {
  if (s == "NP") return Mode::NP;
  if (s == "PP") return Mode::PP;
  if (s == "FP") return Mode::FP;
  throw InstanceError({"unknown processing mode '" + std::string(s) + "'"});
}

std::string to_string(Distribution d) {
  switch (d) {
    case Distribution::UniformInt: return "uniform-int";
    case Distribution::UniformReal: return "uniform-real";
    case Distribution::Exponential: return "exponential";
  }
  return "unknown";
}

Distribution parse_distribution(std::string_view s) {
  if (s == "uniform-int") return Distribution::UniformInt;
  if (s == "uniform-real") return Distribution::UniformReal;
  if (s == "exponential") return Distribution::Exponential;
  throw InstanceError({"unsupported distribution '" + std::string(s) + "'"});
}

InstanceError::InstanceError(std::vector<std::string> errors)
    : std::invalid_argument(join(errors)), errors_(std::move(errors)) {}

EnvKind Instance::kind() const { return static_cast<EnvKind>(env.index()); }

std::size_t Instance::machines() const {
  return std::visit(
      [](const auto& e) -> std::size_t {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, Identical>) return static_cast<std::size_t>(std::max(e.m, 0));
        else if constexpr (std::is_same_v<T, Related>) return e.speeds.size();
        else return e.times.size();
      },
      env);
}

std::size_t Instance::job_count() const {
  if (const auto* u = std::get_if<Unrelated>(&env)) return u->times.empty() ? 0 : u->times.front().size();
  return jobs.size();
}

double Instance::processing_time(std::size_t i, std::size_t j) const {
  return std::visit(
      [&](const auto& e) -> double {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, Identical>) return jobs.at(j);
        else if constexpr (std::is_same_v<T, Related>) return jobs.at(j) / e.speeds.at(i);
        else return e.times.at(i).at(j);
      },
      env);
}

double Instance::total_work() const { return std::accumulate(jobs.begin(), jobs.end(), 0.0); }

ValidationResult validate(Instance& inst) {
  ValidationResult r;
  std::visit(
      [&](auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, Identical>) {
          if (e.m < 1) r.errors.push_back("identical: m must be >= 1");
        } else if constexpr (std::is_same_v<T, Related>) {
          if (e.speeds.empty()) r.errors.push_back("related: at least one speed required");
          for (double s : e.speeds) {
            if (!positive_finite(s)) {
              r.errors.push_back("related: non-positive speed");
              break;
            }
          }
          std::vector<std::size_t> perm(e.speeds.size());
          std::iota(perm.begin(), perm.end(), 0);
          std::stable_sort(perm.begin(), perm.end(),
                           [&](std::size_t a, std::size_t b) { return e.speeds[a] > e.speeds[b]; });
          if (!std::is_sorted(perm.begin(), perm.end())) {
            std::vector<double> sorted(perm.size());
            for (std::size_t k = 0; k < perm.size(); ++k) sorted[k] = e.speeds[perm[k]];
            e.speeds = std::move(sorted);
            r.warnings.push_back("related: speeds re-sorted into non-increasing order");
          }
          r.speed_permutation = std::move(perm);
        } else {
          if (e.times.empty()) r.errors.push_back("unrelated: at least one machine row required");
          const std::size_t n = e.times.empty() ? 0 : e.times.front().size();
          for (const auto& row : e.times) {
            if (row.size() != n) {
              r.errors.push_back("unrelated: rows of the times matrix differ in length");
              break;
            }
          }
          bool bad = false;
          for (const auto& row : e.times)
            for (double v : row) bad = bad || !positive_finite(v);
          if (bad) r.errors.push_back("unrelated: non-positive processing time");
          if (n == 0) r.errors.push_back("at least one job required");
          if (!inst.jobs.empty()) r.errors.push_back("unrelated: jobs list must be empty");
        }
      },
      inst.env);

  if (inst.kind() != EnvKind::Unrelated) {
    if (inst.jobs.empty()) r.errors.push_back("at least one job required");
    if (std::any_of(inst.jobs.begin(), inst.jobs.end(), [](double p) { return !positive_finite(p); }))
      r.errors.push_back("non-positive processing time");
  }
  return r;
}

void validate_or_throw(Instance& inst) {
  auto r = validate(inst);
  if (!r.ok()) throw InstanceError(std::move(r.errors));
}

// ---------------------------------------------------------------------------
// JSON

namespace {

double number_at(const ordered_json& j, const std::string& path) {
  if (!j.is_number()) throw InstanceError({path + ": expected a number"});
  return j.get<double>();
}

std::vector<double> numbers_at(const ordered_json& j, const std::string& path) {
  if (!j.is_array()) throw InstanceError({path + ": expected an array"});
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(number_at(j[k], path + "/" + std::to_string(k)));
  return out;
}

const ordered_json& require(const ordered_json& doc, const char* key) {
  if (!doc.contains(key)) throw InstanceError({std::string("/") + key + ": missing"});
  return doc[key];
}

}  // namespace

Instance parse_instance(std::string_view json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const ordered_json::parse_error& e) {
    throw InstanceError({std::string("malformed JSON: ") + e.what()});
  }
  if (!doc.is_object()) throw InstanceError({"/: expected an object"});

  Instance inst;
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) throw InstanceError({"/label: expected a string"});
    inst.label = doc["label"].get<std::string>();
  }

  const auto& env = require(doc, "env");
  if (!env.is_string()) throw InstanceError({"/env: expected a string"});
  const auto& mode = require(doc, "mode");
  if (!mode.is_string()) throw InstanceError({"/mode: expected a string"});
  try {
    inst.mode = parse_mode(mode.get<std::string>());
  } catch (const InstanceError& e) {
    throw InstanceError({std::string("/mode: ") + e.what()});
  }

  EnvKind kind;
  try {
    kind = parse_env_kind(env.get<std::string>());
  } catch (const InstanceError& e) {
    throw InstanceError({std::string("/env: ") + e.what()});
  }
  switch (kind) {
    case EnvKind::Identical: {
      const auto& m = require(doc, "m");
      if (!m.is_number_integer()) throw InstanceError({"/m: expected an integer"});
      inst.env = Identical{m.get<int>()};
      break;
    }
    case EnvKind::Related:
      inst.env = Related{numbers_at(require(doc, "speeds"), "/speeds")};
      break;
    case EnvKind::Unrelated: {
      const auto& rows = require(doc, "times");
      if (!rows.is_array()) throw InstanceError({"/times: expected an array"});
      Unrelated u;
      for (std::size_t i = 0; i < rows.size(); ++i) u.times.push_back(numbers_at(rows[i], "/times/" + std::to_string(i)));
      inst.env = std::move(u);
      break;
    }
  }

  if (kind == EnvKind::Unrelated) {
    if (doc.contains("jobs")) inst.jobs = numbers_at(doc["jobs"], "/jobs");
  } else {
    inst.jobs = numbers_at(require(doc, "jobs"), "/jobs");
  }

  validate_or_throw(inst);
  return inst;
}

std::string serialize_instance(const Instance& inst) {
  ordered_json doc;
  if (!inst.label.empty()) doc["label"] = inst.label;
  doc["env"] = to_string(inst.kind());
  std::visit(
      [&](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, Identical>) doc["m"] = e.m;
        else if constexpr (std::is_same_v<T, Related>) doc["speeds"] = e.speeds;
        else doc["times"] = e.times;
      },
      inst.env);
  doc["mode"] = to_string(inst.mode);
  doc["jobs"] = inst.jobs;
  return dump_json(doc);
}

// ---------------------------------------------------------------------------
// Generators

Instance gen_rm_instance(int m) {
  if (m < 3) throw InstanceError({"rm instance needs m >= 3, got " + std::to_string(m)});
  const double r = r_m(m);
  const double small = m - 1;
  const double medium = m;
  Instance inst{Identical{m}, Mode::NP, {}, "rm-" + std::to_string(m)};
  inst.jobs.assign(static_cast<std::size_t>(m), small);
  inst.jobs.insert(inst.jobs.end(), static_cast<std::size_t>((m - 1) * (m - 2)), medium);
  inst.jobs.push_back(small * small + r);
  return inst;
}

Instance gen_tight_related(int m) {
  if (m < 2) throw InstanceError({"tight related instance needs m >= 2, got " + std::to_string(m)});
  std::vector<double> speeds(static_cast<std::size_t>(m), 1.0);
  speeds.front() = std::sqrt(static_cast<double>(m)) + 1.0;
  return Instance{Related{std::move(speeds)}, Mode::FP, {1.0}, "tight-related-" + std::to_string(m)};
}

Instance gen_sar_unrelated(double k) {
  if (!(k > 1.0) || !std::isfinite(k)) throw InstanceError({"sar-unrelated needs finite K > 1"});
  return Instance{Unrelated{{{1.0, k}, {k, 1.0}}}, Mode::NP, {}, "sar-unrelated"};
}

Instance gen_random(EnvKind kind, Mode mode, int m, int n, std::uint64_t seed, Distribution dist) {
  if (m < 1 || n < 1) throw InstanceError({"random instance needs m, n >= 1"});
  Rng rng(seed);
  const auto draw = [&]() -> double {
    switch (dist) {
      case Distribution::UniformInt: return static_cast<double>(rng.uniform_int(1, 20));
      case Distribution::UniformReal: return 1.0 - rng.uniform();
      case Distribution::Exponential: return rng.exponential();
    }
    return 1.0;
  };

  Instance inst;
  inst.mode = mode;
  inst.label = "random-" + to_string(kind) + "-" + std::to_string(seed);
  switch (kind) {
    case EnvKind::Identical:
      inst.env = Identical{m};
      break;
    case EnvKind::Related: {
      std::vector<double> speeds(static_cast<std::size_t>(m));
      for (double& s : speeds) s = draw();
      inst.env = Related{std::move(speeds)};
      break;
    }
    case EnvKind::Unrelated: {
      Unrelated u;
      u.times.assign(static_cast<std::size_t>(m), std::vector<double>(static_cast<std::size_t>(n)));
      for (auto& row : u.times)
        for (double& v : row) v = draw();
      inst.env = std::move(u);
      break;
    }
  }
  if (kind != EnvKind::Unrelated) {
    inst.jobs.resize(static_cast<std::size_t>(n));
    for (double& p : inst.jobs) p = draw();
  }
  validate_or_throw(inst);
  return inst;
}

Instance as_unrelated(const Instance& inst) {
  Unrelated u;
  u.times.assign(inst.machines(), std::vector<double>(inst.job_count()));
  for (std::size_t i = 0; i < inst.machines(); ++i)
    for (std::size_t j = 0; j < inst.job_count(); ++j) u.times[i][j] = inst.processing_time(i, j);
  return Instance{std::move(u), inst.mode, {}, inst.label};
}

}  // namespace simsched
