#include <doctest.h>

#include <cmath>
#include <limits>

#include "reference.hpp"
#include "simsched/analysis.hpp"
#include "simsched/schedulers.hpp"

using namespace simsched;

TEST_CASE("speed profiles") {
  const SpeedProfile a({1, 3});
  CHECK(a.speeds() == std::vector<double>{3, 1});
  CHECK(a.t() == 1);
  CHECK(a.delta() == doctest::Approx(1.0 / 3.0));
  CHECK(a.speed(3) == 0.0);

  const SpeedProfile b({3, 1, 1, 1});
  CHECK(b.t() == 2);
  CHECK(b.delta() == 0.0);

  // Ratio 2 up to rounding noise snaps to an integer.
  const double third = 1.0 / 3.0;
  const SpeedProfile c({1.0, third, third, third});
  CHECK(c.t() == 2);
  CHECK(c.delta() == 0.0);

  const SpeedProfile d(std::vector<double>(4, 2.0));
  CHECK(d.t() == 4);
  CHECK(d.delta() == 0.0);

  CHECK_THROWS(SpeedProfile({}));
  CHECK_THROWS(SpeedProfile({1, 0}));
  CHECK_THROWS((void)b.speed(0));
}

TEST_CASE("r_m and its branch bounds") {
  CHECK(r_m(3) == doctest::Approx((std::sqrt(193.0) - 13.0) / 2.0).epsilon(1e-15));
  CHECK(r_m(3) == doctest::Approx(0.446222).epsilon(1e-6));
  CHECK(r_m(4) == doctest::Approx((std::sqrt(1860.0) - 42.0) / 2.0).epsilon(1e-15));
  for (int m = 3; m <= 50; ++m) {
    CHECK(r_m(m) > 0.0);
    CHECK(r_m(m) < m - 2.0);
  }
  CHECK_THROWS(r_m(2));

  const auto b = rm_branch_bounds(3);
  const double r = r_m(3);
  CHECK(b.big_job_shared == doctest::Approx(1.0 + r / 6.0).epsilon(1e-15));
  CHECK(b.big_job_alone == doctest::Approx(12.0 / (12.0 - (1.0 - r))).epsilon(1e-15));
  CHECK(b.big_job_shared == doctest::Approx(1.0744).epsilon(1e-4));
  CHECK(b.big_job_alone == doctest::Approx(1.0484).epsilon(1e-4));
  CHECK(b.min() == b.big_job_alone);
}

TEST_CASE("rm instance has s* above one") {
  const auto inst = gen_rm_instance(3);
  const double star = brute_s_star(inst).value;
  CHECK(star > 1.0 + 1e-6);
  CHECK(star == doctest::Approx(ref::s_star(inst)).epsilon(1e-12));
  CHECK(star >= rm_branch_bounds(3).min() - 1e-9);
  CHECK(ratio_s_envelope(load_vector(Schedule{lpt(inst)}, inst), brute_prefix_envelope(inst)).value >= star);
}

TEST_CASE("closed-form envelope") {
  const SpeedProfile s31({3, 1});
  CHECK(closed_f(s31, 1) == 0.25);
  CHECK(closed_f(s31, 2) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(closed_f(SpeedProfile({1, 1, 1}), 2) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(closed_f(SpeedProfile({3, 1, 1, 1}), 2) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS(closed_f(s31, 0));
  CHECK_THROWS(closed_f(s31, 3));

  const auto env = closed_envelope(s31, 2.0);
  CHECK(env.f == std::vector<double>{0.5, 2.0 / 3.0});
  CHECK(env.provenance == PrefixEnvelope::Provenance::ClosedForm);

  Rng rng(19);
  for (int k = 0; k < 500; ++k) {
    const SpeedProfile p(random_speeds(1 + rng.index(16), rng));
    for (std::size_t i = 1; i < p.size(); ++i) CHECK(closed_f(p, i) <= closed_f(p, i + 1));
    CHECK(closed_f(p, p.size()) == doctest::Approx(1.0 / p.fastest()).epsilon(1e-12));
  }
}

TEST_CASE("closed-form envelope agrees with the numeric oracle") {
  for (const auto& speeds : {std::vector<double>{3, 1}, std::vector<double>{2, 2, 1}, std::vector<double>{5, 1, 1},
                             std::vector<double>{1.5, 1.2, 0.3, 0.1}}) {
    const SpeedProfile p(speeds);
    for (std::size_t i = 1; i <= p.size(); ++i) {
      const double numeric = numeric_fractional_envelope(p.speeds(), i, 3, 20'000);
      CHECK(numeric >= closed_f(p, i) - 1e-9);
      CHECK(numeric == doctest::Approx(closed_f(p, i)).epsilon(1e-6));
    }
  }
}

TEST_CASE("fractional simultaneous ratio on related machines") {
  CHECK(war_q_fp(SpeedProfile({3, 1})) == doctest::Approx(1.2).epsilon(1e-15));
  CHECK(war_q_fp(SpeedProfile({3, 1, 1, 1})) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(war_q_fp(SpeedProfile(std::vector<double>(7, 2.5))) == doctest::Approx(1.0).epsilon(1e-15));

  CHECK(war_q_fp_sup(4) == 1.5);
  CHECK(war_q_fp_sup(1) == 1.0);
  CHECK(war_q_fp_sup(9) == 2.0);
  CHECK_THROWS(war_q_fp_sup(0));

  for (int m : {4, 9, 16, 25}) {
    const auto speeds = std::get<Related>(gen_tight_related(m).env).speeds;
    CHECK(war_q_fp(SpeedProfile(speeds)) == doctest::Approx(war_q_fp_sup(m)).epsilon(1e-12));
  }

  Rng rng(23);
  for (int k = 0; k < 2000; ++k) {
    const std::size_t m = 1 + rng.index(16);
    const SpeedProfile p(random_speeds(m, rng));
    const double war = war_q_fp(p);
    CHECK(war >= 1.0 - 1e-12);
    CHECK(war <= war_q_fp_sup(static_cast<int>(m)) + 1e-12);
    // The explicit construction attains the formula.
    const auto loads = merged_loads(p.speeds(), optimal_regular_fractional(p.speeds()));
    CHECK(ratio_s_envelope(loads, closed_envelope(p)).value == doctest::Approx(war).epsilon(1e-9));
  }
}

TEST_CASE("strong ratio values") {
  CHECK(sar_value(Identical{5}) == 5.0);
  CHECK(sar_value(Related{{3, 1}}) == doctest::Approx(4.0 / 3.0));
  CHECK(sar_value(Unrelated{{{1, 2}, {2, 1}}}) == std::numeric_limits<double>::infinity());
  for (int m : {1, 2, 3}) {
    const Instance units{Identical{m}, Mode::NP, std::vector<double>(static_cast<std::size_t>(m), 1.0), ""};
    CHECK(brute_c_star(units).value == static_cast<double>(m));
  }
}

TEST_CASE("instance envelopes") {
  const auto fp = gen_tight_related(4);
  const auto env = instance_envelope(fp);
  CHECK(env.provenance == PrefixEnvelope::Provenance::ClosedForm);
  CHECK(env.f[0] == doctest::Approx(1.0 / 6.0));

  const Instance pp{Identical{3}, Mode::PP, {9, 5, 4, 4, 2}, ""};
  CHECK(instance_envelope(pp).f == std::vector<double>{9, 16.5, 24});

  const Instance np{Identical{2}, Mode::NP, {3, 2, 2}, ""};
  CHECK(instance_envelope(np).provenance == PrefixEnvelope::Provenance::ExactEnumeration);

  CHECK_THROWS_AS(instance_envelope(Instance{Related{{2, 1}}, Mode::PP, {1}, ""}), UnsupportedError);
  CHECK_THROWS_AS(instance_envelope(Instance{Identical{4}, Mode::NP, std::vector<double>(20, 1.0), ""}),
                  BudgetExceeded);
}

TEST_CASE("claims") {
  const auto& ids = claim_ids();
  CHECK(ids.size() == 13);
  CHECK(std::is_sorted(ids.begin(), ids.end()));
  CHECK_THROWS_AS(verify_claim("bogus", {}), UnknownClaim);

  ClaimParams p;
  p.m = 3;
  auto r = verify_claim("pm_np_lower", p);
  CHECK(r.pass);
  CHECK(r.measured > 1.0 + 1e-6);
  CHECK(r.params["n"] == 6);

  p.speeds = {3, 1};
  p.trials = 5;
  r = verify_claim("q_fp_formula", p);
  CHECK(r.pass);
  CHECK(r.params["war_q_fp"].get<double>() == doctest::Approx(1.2));

  p = ClaimParams{};
  p.trials = 10;
  r = verify_claim("pm_pp_one", p);
  CHECK(r.pass);

  r = verify_claim("q_fp_tight", ClaimParams{4});
  CHECK(r.measured == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(r.pass);

  // Same seed, same report.
  p = ClaimParams{3, 11};
  p.trials = 20;
  CHECK(verify_claim("p3_np_sqrt5", p).to_json_line() == verify_claim("p3_np_sqrt5", p).to_json_line());

  const std::string line = verify_claim("q_fp_tight", ClaimParams{4}).to_json_line();
  CHECK(line.rfind(R"({"claim":"q_fp_tight","params":)", 0) == 0);
  CHECK(line.find(R"("verdict":"pass","seconds":0,"asserted":true})") != std::string::npos);
}

TEST_CASE("bound-corridor table") {
  const auto one = table1_report(1, 0);
  CHECK(one.cells.size() == 9);
  CHECK(one.all_pass());
  for (const auto& c : one.cells) {
    CHECK(c.lower == 1.0);
    CHECK(c.upper == 1.0);
    CHECK(c.verdict == "pass");
  }

  const auto three = table1_report(3, 1);
  CHECK(three.cells.size() == 9);
  CHECK(three.all_pass());
  CHECK(three.cells[0].claimed == "1 < WAR <= 3/2");
  CHECK(three.cells[0].lower_strict);
  CHECK(three.to_json()["cells"].size() == 9);
  CHECK(three.to_text().find("identical NP") != std::string::npos);

  const auto four = table1_report(4, 0, EnumerationBudget{100'000});
  for (const auto& c : four.cells) {
    if (c.env == "related" && c.mode == "FP") CHECK(c.evidence["tight_profile_war_q_fp"].get<double>() == 1.5);
  }
  // The rm instance at m = 4 has 4^11 assignments, over this budget.
  CHECK(four.cells[0].evidence["rm_instance_s_star"] == "skipped: budget");

  const auto forty = table1_report(40, 0);
  CHECK(forty.cells[0].verdict == "skipped: budget");
  CHECK(forty.all_pass());
}
