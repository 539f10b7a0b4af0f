#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "sv/asymptotics.hpp"
#include "sv/oncogenesis.hpp"

using namespace sv;

namespace {
TwoStepParams fig5(int w) {
  TwoStepParams p;
  p.N = 1e6;
  p.w = w;
  p.beta1 = p.beta2 = 0.01;
  p.u1 = 1e-6;
  p.u2 = 1e-5;
  return p;
}
}  // namespace

TEST_CASE("parameter validation") {
  TwoStepParams p = fig5(3);
  CHECK_NOTHROW(p.validate());
  CHECK_THROWS_AS(p.validate(/*require_integer_side=*/true), std::domain_error);  // 1e6/3 no square
  TwoStepParams q = fig5(4);
  CHECK_NOTHROW(q.validate(/*require_integer_side=*/true));  // L = 500
  TwoStepParams bad = fig5(1);
  bad.beta1 = 0.5;
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
}

TEST_CASE("same seed gives identical samples, different reps differ") {
  const TwoStepParams p = fig5(3);
  const InitiationSample a = sample_initiation(p, 9, 0);
  const InitiationSample b = sample_initiation(p, 9, 0);
  const InitiationSample c = sample_initiation(p, 9, 1);
  CHECK(a.sigma2 == b.sigma2);
  CHECK(a.local_field == b.local_field);
  CHECK(a.clone_count == b.clone_count);
  CHECK(a.sigma2 != c.sigma2);
}

TEST_CASE("sample invariants: support bound, ages, clone counts") {
  const TwoStepParams p = fig5(2);
  const double coeff = p.growth_coeff();
  for (uint64_t rep = 0; rep < 300; ++rep) {
    const InitiationSample s = sample_initiation(p, 13, rep);
    REQUIRE(s.sigma2 > 0.0);
    REQUIRE(s.clone_count >= 1);
    REQUIRE(s.initiating_clone_age >= 0.0);
    REQUIRE(s.initiating_clone_age <= s.sigma2);
    REQUIRE(s.local_field > 0.0);
    REQUIRE(s.local_field <= std::min(p.N, coeff * s.sigma2 * s.sigma2) * (1.0 + 1e-12));
  }
}

TEST_CASE("huge u2 collapses sigma2 onto the first clone arrival") {
  // clone volume starts at zero, so sigma2 trails the first arrival by
  // roughly (3E/(u2' A))^(1/3); at u2 = 1e6 that is well below one time
  // unit versus a mean clone spacing of ~101
  TwoStepParams p = fig5(3);
  p.u2 = 1e6;
  for (uint64_t rep = 0; rep < 20; ++rep) {
    const InitiationSample s = sample_initiation(p, 17, rep);
    CHECK(s.clone_count <= 2);
    CHECK(s.local_field / p.N < 1e-6);
    CHECK(s.initiating_clone_age < 1.0);
  }
}

TEST_CASE("common random numbers: raising u2 never raises sigma2") {
  TwoStepParams lo = fig5(3), hi = fig5(3);
  hi.u2 = 2e-5;
  for (uint64_t rep = 0; rep < 500; ++rep) {
    const double s_lo = sample_initiation(lo, 23, rep).sigma2;
    const double s_hi = sample_initiation(hi, 23, rep).sigma2;
    REQUIRE(s_hi <= s_lo);
  }
}

TEST_CASE("sigma2_stats: determinism and monotone quantiles") {
  const TwoStepParams p = fig5(3);
  const Sigma2Stats a = sigma2_stats(p, 400, 29);
  const Sigma2Stats b = sigma2_stats(p, 400, 29);
  CHECK(a.mean == b.mean);
  CHECK(a.q50 == b.q50);
  CHECK(a.q05 <= a.q25);
  CHECK(a.q25 <= a.q50);
  CHECK(a.q50 <= a.q75);
  CHECK(a.q75 <= a.q95);
  CHECK(a.histogram.count.size() >= 1);
}

TEST_CASE("field_hist_conditional: acceptance accounting and support") {
  const TwoStepParams p = fig5(3);
  const Sigma2Stats st = sigma2_stats(p, 400, 31);
  const FieldHistResult fh = field_hist_conditional(p, st.mean, 0.15 * st.mean, 3000, 31, 0, 50);
  CHECK(fh.draws == 3000);
  CHECK(fh.acceptance > 0.0);
  CHECK(fh.acceptance == doctest::Approx(static_cast<double>(fh.accepted.size()) / 3000.0));
  CHECK(fh.support_ok);
  for (const double v : fh.accepted) CHECK(v <= fh.support_bound * (1.0 + 1e-12));
  CHECK_FALSE(fh.partial);
  const FieldHistResult tiny = field_hist_conditional(p, st.mean, 1e-4, 50, 31, 0, 40);
  CHECK(tiny.partial);
}

TEST_CASE("regime label echoes thresholds and the exact Gamma") {
  const RegimeLabel r = regime_label(fig5(1));
  CHECK(r.gamma == doctest::Approx(1465.87119775885548).epsilon(1e-9));
  CHECK(r.regime == GammaRegime::LargeGamma);
  CHECK(r.small_threshold == 1.0);
  CHECK(r.large_threshold == 1e3);
  // Gamma scales as 1/(p_w^2 w)
  const RegimeLabel r3 = regime_label(fig5(3));
  CHECK(r3.gamma / r.gamma == doctest::Approx(1.0 / ((2.0 / 3.0) * (2.0 / 3.0) * 3.0)).epsilon(1e-12));
  // doubling N scales Gamma by 8
  TwoStepParams big = fig5(1);
  big.N = 2e6;
  CHECK(regime_label(big).gamma == doctest::Approx(8.0 * r.gamma).epsilon(1e-12));
}

TEST_CASE("intensity never exceeds the clone-count cap") {
  // implied by the volume cap: local fields can never exceed N
  TwoStepParams p = fig5(1);
  p.u1 = 2e-5;  // many clones, pushes sigma2 late enough for caps to bind
  p.u2 = 1e-9;
  for (uint64_t rep = 0; rep < 40; ++rep) {
    const InitiationSample s = sample_initiation(p, 37, rep);
    CHECK(s.local_field <= p.N * (1.0 + 1e-12));
  }
}
