#pragma once

#include <cstdint>
#include <vector>

#include "sv/voter.hpp"

namespace sv {

struct SurvivalEstimate {
  double fraction = 0.0;      // replicates reaching size M before extinction
  double analytic = 0.0;      // embedded-chain gambler's ruin (1-q)/(1-q^M)
  double se = 0.0;            // binomial SE at the analytic value
  uint64_t hits = 0;
  uint64_t reps = 0;
};

// exact hitting probability of M before 0 for the embedded size chain,
// started from one cell: (1-q)/(1-q^M) with q = 1/(1+beta); 1/M at beta = 0
double survival_analytic(double beta, uint64_t M);

// fraction of replicates (start {0}) reaching size M before extinction
SurvivalEstimate survival_fraction(double beta, const LatticeGeometry& geom, uint64_t M,
                                   uint64_t reps, uint64_t seed, int workers = 0);

struct SpeedEstimate {
  std::vector<double> speeds;    // per surviving replicate, R / hitting time
  double mean = 0.0;
  double ci95_half = 0.0;
  uint64_t attempts = 0;         // replicates launched, extinctions included
  uint64_t surviving = 0;
  uint64_t timed_out = 0;        // hit the safety time cap (should be zero)
  bool no_survivors = false;
  int32_t radius = 0;
};

// Propagation speed toward the plane |x| = R from a single seed cell.
// `reps` is the number of *surviving* replicates collected; extinct
// replicates are discarded and counted in `attempts` (the theory conditions
// on non-extinction).  A finite window must satisfy L > 4R so the front
// cannot wrap before the plane is hit.
SpeedEstimate front_speed(double beta, const LatticeGeometry& geom, int32_t R, uint64_t reps,
                          uint64_t seed, int workers = 0, double time_cap = 1e7,
                          uint64_t max_attempts = 0);

struct LayerStats {
  int layer = 0;
  uint64_t cells = 0;
  int32_t min_x = 0, max_x = 0, min_y = 0, max_y = 0;
};

struct ShapeSnapshot {
  std::vector<LayerStats> layers;  // only layers holding at least one cell
  uint64_t cells = 0;
  int32_t x_extent = 0;  // max_x - min_x + 1 over the whole clone
  int32_t y_extent = 0;
  double aspect_ratio = 0.0;  // x_extent / y_extent
};

// per-layer cross-section extents and occupancy of a nonempty clone
ShapeSnapshot snapshot_shape(const BvmState& state);

// grow a single seed to `target` cells, retrying seeds until one survives;
// returns the surviving state (stream ids seed_base, seed_base+1, ...)
BvmState grow_surviving_clone(double beta, const LatticeGeometry& geom, uint64_t target,
                              uint64_t seed, uint64_t* attempts_out = nullptr);

}  // namespace sv
