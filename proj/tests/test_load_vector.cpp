#include <doctest.h>

#include <cmath>
#include <limits>

#include "simsched/load_vector.hpp"
#include "simsched/random.hpp"

using namespace simsched;

namespace {
const double kInf = std::numeric_limits<double>::infinity();

LoadVector random_int_vector(Rng& rng, std::size_t len, std::int64_t hi = 12) {
  std::vector<double> v(len);
  for (double& x : v) x = static_cast<double>(rng.uniform_int(0, hi));
  return LoadVector(v);
}
}  // namespace

TEST_CASE("load vectors reject empty and negative input") {
  CHECK_THROWS_AS(LoadVector(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS(LoadVector({1.0, -1.0}));
  CHECK_THROWS(LoadVector({1.0, std::nan("")}));
  CHECK_NOTHROW(LoadVector({0.0}));
}

TEST_CASE("sorted_desc and prefix_sums") {
  CHECK(sorted_desc(LoadVector{1, 3, 2}) == LoadVector{3, 2, 1});
  CHECK(sorted_desc(LoadVector{5, 5, 5}) == LoadVector{5, 5, 5});
  CHECK(sorted_desc(LoadVector{0, 4}) == LoadVector{4, 0});

  CHECK(prefix_sums(LoadVector{3, 2, 1}) == std::vector<double>{3, 5, 6});
  CHECK(prefix_sums(LoadVector{0, 0}) == std::vector<double>{0, 0});
  CHECK(prefix_sums(LoadVector{4, 0}) == std::vector<double>{4, 4});
}

TEST_CASE("coordinate and prefix dominance") {
  CHECK_FALSE(coord_dominates(LoadVector{2, 2}, LoadVector{3, 1}));
  CHECK(coord_dominates(LoadVector{3, 1}, LoadVector{3, 1}));
  CHECK(coord_dominates(LoadVector{0.5, 0}, LoadVector{0.6, 0.2}));

  CHECK(prefix_dominates(LoadVector{2, 2}, LoadVector{3, 1}));
  CHECK_FALSE(prefix_dominates(LoadVector{3, 1}, LoadVector{2, 2}));
  CHECK(prefix_dominates(LoadVector{4, 1, 7}, LoadVector{7, 4, 1}));

  CHECK_THROWS_AS(coord_dominates(LoadVector{1}, LoadVector{1, 2}), DimensionError);
  CHECK_THROWS_AS(prefix_dominates(LoadVector{1}, LoadVector{1, 2}), DimensionError);
}

TEST_CASE("tolerance") {
  const Tolerance tol;
  CHECK(tol.leq(1.0 + 1e-10, 1.0));
  CHECK_FALSE(tol.leq(1.0 + 1e-6, 1.0));
  CHECK(tol.leq(1e-13, 0.0));
  CHECK(tol.leq(5.0, kInf));
  CHECK_FALSE(tol.leq(kInf, 5.0));
  CHECK_FALSE(Tolerance::exact().leq(1.0 + 1e-15, 1.0));
  CHECK(prefix_dominates(LoadVector{1.0 + 1e-12, 1.0}, LoadVector{1.0, 1.0}));
  CHECK_FALSE(prefix_dominates(LoadVector{1.0 + 1e-12, 1.0}, LoadVector{1.0, 1.0}, Tolerance::exact()));
}

TEST_CASE("pairwise ratios") {
  CHECK(ratio_c_pair(LoadVector{3, 0, 0}, LoadVector{1, 1, 1}) == 3.0);
  CHECK(ratio_c_pair(LoadVector{1, 1}, LoadVector{2, 0}) == kInf);
  CHECK(ratio_c_pair(LoadVector{5, 2}, LoadVector{5, 2}) == 1.0);
  CHECK(ratio_c_pair(LoadVector{0, 0}, LoadVector{0, 0}) == 0.0);

  CHECK(ratio_s_pair(LoadVector{3, 1}, LoadVector{2, 2}) == 1.5);
  CHECK(ratio_s_pair(LoadVector{2, 2}, LoadVector{3, 1}) == 1.0);
  CHECK(ratio_s_pair(LoadVector{7, 1, 4}, LoadVector{7, 1, 4}) == 1.0);

  CHECK(safe_ratio(0, 0) == 0.0);
  CHECK(safe_ratio(2, 0) == kInf);
  CHECK(safe_ratio(3, 2) == 1.5);
}

TEST_CASE("ratio against an envelope") {
  PrefixEnvelope f{{9, 18}, PrefixEnvelope::Provenance::ExactEnumeration};
  auto r = ratio_s_envelope(LoadVector{8, 10}, f);
  CHECK(r.value == doctest::Approx(10.0 / 9.0).epsilon(1e-15));
  CHECK(r.witness == 0);

  // Both prefixes tie at 1.2 in exact arithmetic; the first index wins.
  PrefixEnvelope g{{0.25, 1.0 / 3.0}, PrefixEnvelope::Provenance::ClosedForm};
  r = ratio_s_envelope(LoadVector{0.3, 0.1}, g);
  CHECK(r.value == doctest::Approx(1.2).epsilon(1e-12));
  CHECK(r.witness == 0);

  r = ratio_s_envelope(LoadVector{4, 3}, PrefixEnvelope{{4, 7}});
  CHECK(r.value == 1.0);

  CHECK_THROWS_AS(ratio_s_envelope(LoadVector{1, 1}, PrefixEnvelope{{1}}), DimensionError);
  CHECK_THROWS(ratio_s_envelope(LoadVector{1, 1}, PrefixEnvelope{{0, 2}}));
}

TEST_CASE("concat") {
  CHECK(concat(LoadVector{3, 1}, LoadVector{2, 2}) == LoadVector{3, 1, 2, 2});
  CHECK(concat(LoadVector{0}, LoadVector{0}) == LoadVector{0, 0});
}

TEST_CASE("order properties on random integer vectors") {
  Rng rng(42);
  const Tolerance exact = Tolerance::exact();
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t len = 1 + rng.index(5);
    const auto x = random_int_vector(rng, len);
    const auto y = random_int_vector(rng, len);
    const auto z = random_int_vector(rng, len);

    CHECK(prefix_dominates(x, x, exact));
    if (coord_dominates(x, y, exact)) CHECK(prefix_dominates(x, y, exact));
    if (prefix_dominates(x, y, exact) && prefix_dominates(y, z, exact)) CHECK(prefix_dominates(x, z, exact));
    CHECK(ratio_s_pair(x, y) <= ratio_c_pair(x, y));

    // The least alpha really is a dominance scale.
    const double alpha = ratio_s_pair(x, y);
    if (std::isfinite(alpha)) {
      std::vector<double> scaled(y.begin(), y.end());
      for (double& v : scaled) v *= alpha;
      CHECK(prefix_dominates(x, LoadVector(scaled)));
    }
  }
}

TEST_CASE("merge preserves prefix dominance") {
  Rng rng(7);
  const Tolerance exact = Tolerance::exact();
  int checked = 0;
  for (int trial = 0; trial < 20000; ++trial) {
    const std::size_t len = 1 + rng.index(4);
    const auto x = random_int_vector(rng, len, 6);
    const auto y = random_int_vector(rng, len, 6);
    const auto x2 = random_int_vector(rng, 2, 6);
    const auto y2 = random_int_vector(rng, 2, 6);
    if (!prefix_dominates(x, y, exact) || !prefix_dominates(x2, y2, exact)) continue;
    ++checked;
    CHECK(prefix_dominates(concat(x, x2), concat(y, y2), exact));
  }
  CHECK(checked > 1000);
}
