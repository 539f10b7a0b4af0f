#pragma once

#include <cstdint>
#include <vector>

#include "sv/lattice.hpp"
#include "sv/rng.hpp"

namespace sv {

// Uniform step table for the SSRW on Z^d x Z_w (periodic vertical), d in
// {1,2}.  w = 1 drops the vertical moves entirely (flag-gated callers only).
// Offsets appear in the canonical neighbor order of LatticeGeometry.
struct StepTable {
  int d = 2;
  int w = 1;
  int k = 4;  // number of offsets
  int32_t dx[6] = {};
  int32_t dy[6] = {};
  int32_t dz[6] = {};  // -1 is stored as w-1 (additive mod w)
};

StepTable make_step_table(int d, int w);

struct WalkPos {
  int32_t x = 0, y = 0, z = 0;
};

inline void apply_step(const StepTable& tbl, WalkPos& p, uint64_t idx) {
  p.x += tbl.dx[idx];
  p.y += tbl.dy[idx];
  p.z += tbl.dz[idx];
  if (p.z >= tbl.w) p.z -= tbl.w;
}

// Branch-event classification (decision periods of the pruning scheme).
// The difference of two independent rate-alpha walks started at 0 and a
// uniform neighbor of 0 is itself a SSRW with jump rate 2*alpha; each trial
// races its first return to 0 against an independent Exp(beta) clock S and
// the horizon tau(beta):
//   type 0:  T0 <= min(S, tau)     type 1:  S <= min(T0, tau)
//   type 2:  tau <= min(S, T0)
struct BranchClassCounts {
  uint64_t n0 = 0, n1 = 0, n2 = 0;
  double alpha0 = 0.0, alpha1 = 0.0, alpha2 = 0.0;
  double tau = 0.0;
  uint64_t reps = 0;
};

BranchClassCounts classify_branch_events(double beta, int w, uint64_t reps, uint64_t seed,
                                         double alpha = 1.0, int workers = 0);

struct TailPoint {
  double t = 0.0;
  double p_hat = 0.0;  // P(T0 > t)
  double se = 0.0;
  double r = 0.0;      // p_hat * log(alpha t) / mu_w
};

struct TailResult {
  std::vector<TailPoint> points;
  uint64_t reps_done = 0;
  uint64_t steps_used = 0;
  bool truncated = false;  // step budget exhausted before all reps ran
};

// Empirical survival function of the first return time to the origin of a
// rate-alpha SSRW started at a uniform neighbor of 0.  Trials are censored
// at max(t_grid); censored trials count toward {T0 > t} for every grid t,
// which is exact.  Jump chain and holding times are independent, so block
// times are drawn as Gamma(steps)/alpha instead of per-jump exponentials.
TailResult return_time_tail(int w, double alpha, const std::vector<double>& t_grid,
                            uint64_t reps, uint64_t seed, int workers = 0,
                            uint64_t step_budget = 0);

struct LcltEstimate {
  double p_hat = 0.0;       // P(Z_t = x)
  double scaled = 0.0;      // (alpha t)^{d/2} * p_hat
  double limit = 0.0;       // 1/w * (d / (2 pi p_{w,d}))^{d/2}
  double se_scaled = 0.0;
  uint64_t hits = 0;
  uint64_t reps = 0;
};

// Monte Carlo point mass of the rate-alpha SSRW at time t, times the local
// CLT scaling.  w = 1 (planar walk, p := 1) requires allow_w1.
LcltEstimate lclt_estimate(int d, int w, double alpha, double t, const Site& x, uint64_t reps,
                           uint64_t seed, bool allow_w1 = false, int workers = 0,
                           double se_bound = 0.0);

double lclt_limit(int d, int w, bool allow_w1 = false);

}  // namespace sv
