#include <cmath>

#include "doctest.h"
#include "sv/voter_mc.hpp"

using namespace sv;

namespace {
const LatticeGeometry kW3(3, VerticalBc::Periodic);
const LatticeGeometry kW1(1, VerticalBc::Periodic);
}

TEST_CASE("gambler's ruin against the embedded-chain value (quick scale)") {
  const double beta = 0.5;
  const uint64_t M = 20, reps = 3000;
  const SurvivalEstimate est = survival_fraction(beta, kW3, M, reps, 515);
  CHECK(est.reps == reps);
  CHECK(std::fabs(est.fraction - est.analytic) < 4.0 * est.se);
  // the analytic route: (1-q)/(1-q^M)
  const double q = 1.0 / 1.5;
  CHECK(est.analytic == doctest::Approx((1 - q) / (1 - std::pow(q, 20.0))).epsilon(1e-12));
}

TEST_CASE("neutral case hits M before 0 with probability 1/M") {
  const SurvivalEstimate est = survival_fraction(0.0, kW1, 10, 5000, 517);
  CHECK(est.analytic == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(std::fabs(est.fraction - 0.1) < 4.0 * est.se);
}

TEST_CASE("survival analytic limits") {
  CHECK(survival_analytic(0.1, 1u << 30) == doctest::Approx(0.1 / 1.1).epsilon(1e-9));
  CHECK(survival_analytic(0.0, 100) == doctest::Approx(0.01).epsilon(1e-15));
}

TEST_CASE("front speed: determinism, extents, and worker invariance") {
  const SpeedEstimate a = front_speed(0.3, kW1, 15, 10, 313, /*workers=*/1);
  const SpeedEstimate b = front_speed(0.3, kW1, 15, 10, 313, /*workers=*/2);
  REQUIRE_FALSE(a.no_survivors);
  REQUIRE(a.surviving == 10);
  REQUIRE(b.surviving == 10);
  CHECK(a.mean == b.mean);  // worker count must not change results
  CHECK(a.attempts == b.attempts);
  for (size_t i = 0; i < a.speeds.size(); ++i) CHECK(a.speeds[i] == b.speeds[i]);
  CHECK(a.mean > 0.05);
  CHECK(a.mean < 3.0);
  CHECK(a.attempts >= a.surviving);
  CHECK(a.timed_out == 0);
}

TEST_CASE("front speed: no-survivors result is explicit") {
  const SpeedEstimate est = front_speed(0.05, kW1, 40, 5, 331, 1, 1e7, /*max_attempts=*/3);
  CHECK(est.no_survivors);
  CHECK(est.surviving == 0);
  CHECK(est.attempts == 3);
  CHECK(est.speeds.empty());
}

TEST_CASE("front speed validates its domain") {
  CHECK_THROWS_AS(front_speed(0.2, kW1, 5, 3, 1), std::domain_error);
  const LatticeGeometry small_torus(1, VerticalBc::Periodic, 30);
  CHECK_THROWS_AS(front_speed(0.2, small_torus, 10, 3, 1), std::domain_error);
}

TEST_CASE("snapshot of a singleton and of a grown clone") {
  BvmState single(kW3, 0.1, {Site{2, 5, 1}});
  const ShapeSnapshot snap = snapshot_shape(single);
  CHECK(snap.cells == 1);
  CHECK(snap.aspect_ratio == doctest::Approx(1.0));
  REQUIRE(snap.layers.size() == 1);
  CHECK(snap.layers[0].layer == 1);
  CHECK(snap.layers[0].min_x == 2);
  CHECK(snap.layers[0].max_x == 2);

  BvmState empty(kW3, 0.1, {});
  CHECK_THROWS_AS(snapshot_shape(empty), std::domain_error);

  uint64_t attempts = 0;
  BvmState clone = grow_surviving_clone(0.3, kW3, 4000, 617, &attempts);
  CHECK(attempts >= 1);
  const ShapeSnapshot s2 = snapshot_shape(clone);
  CHECK(s2.cells >= 4000);
  CHECK(s2.aspect_ratio > 0.75);
  CHECK(s2.aspect_ratio < 1.25);
  CHECK(s2.layers.size() == 3);
}
