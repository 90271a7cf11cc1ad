#include <doctest.h>

#include <cmath>
#include <numeric>

#include "simsched/analysis.hpp"
#include "simsched/instance.hpp"

using namespace simsched;

namespace {
bool has_error(const ValidationResult& r, const std::string& needle) {
  for (const auto& e : r.errors)
    if (e.find(needle) != std::string::npos) return true;
  return false;
}
}  // namespace

TEST_CASE("validation") {
  Instance ok{Identical{2}, Mode::NP, {3, 2, 2}, ""};
  CHECK(validate(ok).ok());

  Instance rel{Related{{1, 3}}, Mode::FP, {1}, ""};
  const auto r = validate(rel);
  CHECK(r.ok());
  CHECK(std::get<Related>(rel.env).speeds == std::vector<double>{3, 1});
  CHECK(r.warnings.size() == 1);
  CHECK(r.speed_permutation == std::vector<std::size_t>{1, 0});
  // Normal form is idempotent.
  CHECK(validate(rel).warnings.empty());

  Instance zero{Identical{2}, Mode::NP, {3, 0}, ""};
  CHECK(has_error(validate(zero), "non-positive processing time"));

  Instance no_jobs{Identical{2}, Mode::NP, {}, ""};
  CHECK_FALSE(validate(no_jobs).ok());

  Instance no_machines{Identical{0}, Mode::NP, {1}, ""};
  CHECK_FALSE(validate(no_machines).ok());

  Instance ragged{Unrelated{{{1, 2}, {3}}}, Mode::NP, {}, ""};
  CHECK_FALSE(validate(ragged).ok());

  Instance unrelated_jobs{Unrelated{{{1, 2}, {3, 4}}}, Mode::NP, {1, 1}, ""};
  CHECK_FALSE(validate(unrelated_jobs).ok());

  Instance bad_speed{Related{{2, -1}}, Mode::NP, {1}, ""};
  CHECK_FALSE(validate(bad_speed).ok());
  CHECK_THROWS_AS(validate_or_throw(bad_speed), InstanceError);
}

TEST_CASE("parse and serialize") {
  auto a = parse_instance(R"({"env":"identical","m":2,"mode":"NP","jobs":[3,2,2]})");
  CHECK(a.kind() == EnvKind::Identical);
  CHECK(a.machines() == 2);
  CHECK(a.jobs == std::vector<double>{3, 2, 2});
  CHECK(serialize_instance(a) == R"({"env":"identical","m":2,"mode":"NP","jobs":[3,2,2]})");

  auto b = parse_instance(R"({"env":"related","speeds":[3,1],"mode":"FP","jobs":[1]})");
  CHECK(b.mode == Mode::FP);
  CHECK(b.processing_time(0, 0) == doctest::Approx(1.0 / 3.0));

  auto c = parse_instance(R"({"label":"x","env":"unrelated","times":[[1,5],[4,2]],"mode":"NP"})");
  CHECK(c.job_count() == 2);
  CHECK(c.processing_time(1, 0) == 4.0);
  CHECK(parse_instance(serialize_instance(c)).label == "x");

  try {
    parse_instance(R"({"env":"identical","m":2,"jobs":[3,2,2]})");
    FAIL("expected an error");
  } catch (const InstanceError& e) {
    REQUIRE_FALSE(e.errors().empty());
    CHECK(e.errors().front().find("/mode") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_instance("not json"), InstanceError);
  CHECK_THROWS_AS(parse_instance(R"({"env":"cloud","m":2,"mode":"NP","jobs":[1]})"), InstanceError);
  CHECK_THROWS_AS(parse_instance(R"({"env":"identical","m":2,"mode":"NP","jobs":[1,"x"]})"), InstanceError);

  // Reals keep full precision through a round trip.
  Instance d{Identical{3}, Mode::NP, {0.1, 1.0 / 3.0, std::sqrt(2.0)}, ""};
  CHECK(parse_instance(serialize_instance(d)).jobs == d.jobs);

  // Related speeds come back in normal form.
  auto e = parse_instance(R"({"env":"related","speeds":[1,2,3],"mode":"NP","jobs":[1]})");
  CHECK(std::get<Related>(e.env).speeds == std::vector<double>{3, 2, 1});
}

TEST_CASE("rm instance") {
  const auto i3 = gen_rm_instance(3);
  const double r3 = (std::sqrt(193.0) - 13.0) / 2.0;
  CHECK(i3.job_count() == 6);
  CHECK(i3.mode == Mode::NP);
  CHECK(i3.machines() == 3);
  std::vector<double> expected{2, 2, 2, 3, 3, 4 + r3};
  REQUIRE(i3.jobs.size() == expected.size());
  for (std::size_t j = 0; j < expected.size(); ++j) CHECK(i3.jobs[j] == doctest::Approx(expected[j]).epsilon(1e-14));

  const auto i4 = gen_rm_instance(4);
  CHECK(i4.job_count() == 11);
  CHECK(std::count(i4.jobs.begin(), i4.jobs.end(), 3.0) == 4);
  CHECK(std::count(i4.jobs.begin(), i4.jobs.end(), 4.0) == 6);

  for (int m = 3; m <= 8; ++m) {
    const auto inst = gen_rm_instance(m);
    const double md = m;
    const double total = md * (md - 1) + md * (md - 1) * (md - 2) + (md - 1) * (md - 1) + r_m(m);
    CHECK(inst.total_work() == doctest::Approx(total).epsilon(1e-14));
    CHECK(static_cast<int>(inst.job_count()) == m + (m - 1) * (m - 2) + 1);
  }
  CHECK_THROWS_AS(gen_rm_instance(2), InstanceError);
}

TEST_CASE("tight related and sar unrelated instances") {
  const auto t4 = gen_tight_related(4);
  CHECK(std::get<Related>(t4.env).speeds == std::vector<double>{3, 1, 1, 1});
  CHECK(t4.jobs == std::vector<double>{1});
  CHECK(t4.mode == Mode::FP);
  const auto t9 = gen_tight_related(9);
  CHECK(std::get<Related>(t9.env).speeds.front() == 4.0);
  CHECK(std::get<Related>(t9.env).speeds.size() == 9);
  CHECK_THROWS_AS(gen_tight_related(1), InstanceError);

  const auto u = gen_sar_unrelated(10);
  CHECK(std::get<Unrelated>(u.env).times == std::vector<std::vector<double>>{{1, 10}, {10, 1}});
  CHECK_THROWS_AS(gen_sar_unrelated(1.0), InstanceError);
}

TEST_CASE("random instances are pure functions of their arguments") {
  const auto a = gen_random(EnvKind::Identical, Mode::NP, 3, 6, 1, Distribution::UniformInt);
  const auto b = gen_random(EnvKind::Identical, Mode::NP, 3, 6, 1, Distribution::UniformInt);
  CHECK(serialize_instance(a) == serialize_instance(b));
  CHECK(a.job_count() == 6);
  for (double p : a.jobs) {
    CHECK(p == std::floor(p));
    CHECK(p >= 1);
    CHECK(p <= 20);
  }
  const auto c = gen_random(EnvKind::Identical, Mode::NP, 3, 6, 2, Distribution::UniformInt);
  CHECK(serialize_instance(a) != serialize_instance(c));

  const auto f = gen_random(EnvKind::Related, Mode::FP, 2, 1, 7, Distribution::UniformReal);
  CHECK(f.job_count() == 1);
  CHECK(f.jobs[0] > 0.0);
  CHECK(f.jobs[0] <= 1.0);

  const auto u = gen_random(EnvKind::Unrelated, Mode::NP, 2, 4, 3, Distribution::UniformInt);
  CHECK(std::get<Unrelated>(u.env).times.size() == 2);
  CHECK(std::get<Unrelated>(u.env).times[0].size() == 4);

  const auto e = gen_random(EnvKind::Identical, Mode::PP, 4, 50, 9, Distribution::Exponential);
  for (double p : e.jobs) CHECK(p > 0.0);

  CHECK_THROWS(gen_random(EnvKind::Identical, Mode::NP, 0, 3, 1, Distribution::UniformInt));
  CHECK_THROWS_AS(parse_distribution("gaussian"), InstanceError);
  CHECK(parse_distribution("uniform-real") == Distribution::UniformReal);
}

TEST_CASE("unrelated view") {
  const auto r = parse_instance(R"({"env":"related","speeds":[2,1],"mode":"NP","jobs":[4,2]})");
  const auto u = as_unrelated(r);
  CHECK(std::get<Unrelated>(u.env).times == std::vector<std::vector<double>>{{2, 1}, {4, 2}});
}
