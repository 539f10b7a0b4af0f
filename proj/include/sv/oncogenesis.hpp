#pragma once

#include <cstdint>
#include <vector>

#include "sv/rng.hpp"
#include "sv/stats.hpp"

namespace sv {

// Two-step initiation model on a tissue of N cells across w layers, under
// the deterministic stacked-disk growth approximation: successful type-1
// clones arrive as a Poisson process with rate N u1 b1/(1+b1); a clone of
// age a holds v(a) = pi w (c_w(b1) a)^2 cells, capped at N; the first
// successful type-2 cell arrives as an inhomogeneous Poisson point with
// intensity u2 b2/(1+b2) times the total type-1 volume.
struct TwoStepParams {
  double N = 1e6;       // total cell count (= L^2 w when the side is integral)
  int w = 1;
  double beta1 = 0.01;
  double beta2 = 0.01;
  double u1 = 1e-6;
  double u2 = 1e-5;

  void validate(bool require_integer_side = false) const;
  double clone_rate() const;       // N u1 b1/(1+b1)
  double success_u2() const;       // u2 b2/(1+b2)
  double growth_coeff() const;     // pi w c_w(beta1)^2, v(a) = coeff a^2
  double cap_age() const;          // age at which a clone saturates at N
};

struct InitiationSample {
  double sigma2 = 0.0;          // time of the first successful type-2 cell
  double local_field = 0.0;     // volume of the initiating clone at sigma2
  uint64_t clone_count = 0;     // successful type-1 clones existing at sigma2
  double initiating_clone_age = 0.0;
};

enum class Sigma2Sampler { HazardInversion, Thinning };

// One draw of (sigma2, local field, clone census).  The inversion sampler
// inverts the piecewise-cubic cumulative hazard segment by segment; the
// thinning sampler rejects candidate points under a per-segment dominating
// rate.  Both use the same substream layout (clone arrivals / hazard draws /
// clone selection), so common random numbers couple runs across parameter
// changes: raising u2 can only lower sigma2 samplewise.
InitiationSample sample_initiation(const TwoStepParams& params, uint64_t seed, uint64_t rep,
                                   Sigma2Sampler sampler = Sigma2Sampler::HazardInversion);

struct Sigma2Stats {
  double mean = 0.0;
  double sd = 0.0;
  double q05 = 0.0, q25 = 0.0, q50 = 0.0, q75 = 0.0, q95 = 0.0;
  Histogram histogram;
  std::vector<InitiationSample> samples;
  uint64_t reps = 0;
};

Sigma2Stats sigma2_stats(const TwoStepParams& params, uint64_t reps, uint64_t seed,
                         int workers = 0,
                         Sigma2Sampler sampler = Sigma2Sampler::HazardInversion,
                         bool keep_samples = false);

struct FieldHistResult {
  Histogram histogram;          // local field sizes with sigma2 in [t-dt, t+dt]
  std::vector<double> accepted;
  uint64_t draws = 0;
  double acceptance = 0.0;
  double support_bound = 0.0;   // pi w (c_w(beta1) (t+dt))^2, capped at N
  bool support_ok = true;
  bool partial = false;         // fewer accepted draws than requested minimum
};

// rejection sampling of the local-field distribution conditioned on
// sigma2 in [t-dt, t+dt]
FieldHistResult field_hist_conditional(const TwoStepParams& params, double t, double dt,
                                       uint64_t reps, uint64_t seed, int workers = 0,
                                       uint64_t min_accepted = 200);

enum class GammaRegime { SmallGamma, Intermediate, LargeGamma };

struct RegimeLabel {
  double gamma = 0.0;
  GammaRegime regime = GammaRegime::Intermediate;
  double small_threshold = 1.0;     // defaults are ours, always reported
  double large_threshold = 1e3;
};

const char* regime_name(GammaRegime r);

RegimeLabel regime_label(const TwoStepParams& params, double small_threshold = 1.0,
                         double large_threshold = 1e3);

}  // namespace sv
