#include "sv/voter_mc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sv/parallel.hpp"
#include "sv/stats.hpp"

namespace sv {

double survival_analytic(double beta, uint64_t M) {
  if (M < 1) throw std::domain_error("survival_analytic: M must be >= 1");
  if (beta == 0.0) return 1.0 / static_cast<double>(M);
  const double q = 1.0 / (1.0 + beta);
  return (1.0 - q) / (1.0 - std::pow(q, static_cast<double>(M)));
}

SurvivalEstimate survival_fraction(double beta, const LatticeGeometry& geom, uint64_t M,
                                   uint64_t reps, uint64_t seed, int workers) {
  if (M < 2) throw std::domain_error("survival_fraction: M must be >= 2");
  if (reps < 1) throw std::domain_error("survival_fraction: reps must be >= 1");
  if (workers <= 0) workers = default_workers();

  auto one = [&](uint64_t, EventStream& stream) -> uint8_t {
    BvmState state(geom, beta, {Site{0, 0, 0}});
    StopCondition stop;
    stop.extinct = true;
    stop.size_reached = M;
    const RunResult r = run_until(state, stop, stream);
    return r.outcome == Outcome::SizeReached ? 1 : 0;
  };
  const std::vector<uint8_t> hits = parallel_map<uint8_t>(reps, seed, 0, workers, one);

  SurvivalEstimate est;
  est.reps = reps;
  for (uint8_t h : hits) est.hits += h;
  est.fraction = static_cast<double>(est.hits) / static_cast<double>(reps);
  est.analytic = survival_analytic(beta, M);
  est.se = binomial_se(est.analytic, reps);
  return est;
}

SpeedEstimate front_speed(double beta, const LatticeGeometry& geom, int32_t R, uint64_t reps,
                          uint64_t seed, int workers, double time_cap, uint64_t max_attempts) {
  if (R < 10) throw std::domain_error("front_speed: R must be >= 10");
  if (reps < 1) throw std::domain_error("front_speed: reps must be >= 1");
  if (geom.bounded() && *geom.window <= 4 * R)
    throw std::domain_error("front_speed: finite window requires L > 4R");
  if (workers <= 0) workers = default_workers();
  if (max_attempts == 0) {
    const double p = std::max(survival_analytic(beta, 1ull << 30), 1e-6);
    max_attempts = static_cast<uint64_t>(std::ceil(40.0 * static_cast<double>(reps) / p));
  }

  struct Attempt {
    uint8_t survived = 0;
    uint8_t timed_out = 0;
    double speed = 0.0;
  };
  auto one = [&](uint64_t, EventStream& stream) -> Attempt {
    BvmState state(geom, beta, {Site{0, 0, 0}});
    StopCondition stop;
    stop.extinct = true;
    stop.plane_hit = R;
    stop.time_reached = time_cap;  // safety cap, satisfies the unbounded-window rule
    const RunResult r = run_until(state, stop, stream);
    Attempt a;
    if (r.outcome == Outcome::PlaneHit) {
      a.survived = 1;
      a.speed = static_cast<double>(R) / r.final_time;
    } else if (r.outcome == Outcome::TimeReached || r.outcome == Outcome::Fixated) {
      a.timed_out = 1;
    }
    return a;
  };

  SpeedEstimate est;
  est.radius = R;
  // waves keep the schedule deterministic: survivors are taken in attempt
  // order no matter how many workers ran them
  const uint64_t wave = std::max<uint64_t>(static_cast<uint64_t>(workers) * 8, 32);
  uint64_t launched = 0;
  while (est.speeds.size() < reps && launched < max_attempts) {
    const uint64_t n = std::min(wave, max_attempts - launched);
    const std::vector<Attempt> got = parallel_map<Attempt>(n, seed, launched, workers, one);
    for (const Attempt& a : got) {
      ++est.attempts;
      if (a.timed_out) ++est.timed_out;
      if (a.survived && est.speeds.size() < reps) est.speeds.push_back(a.speed);
    }
    launched += n;
  }
  est.surviving = est.speeds.size();
  if (est.speeds.empty()) {
    est.no_survivors = true;
    return est;
  }
  const MeanCi mc = mean_ci(est.speeds);
  est.mean = mc.mean;
  est.ci95_half = mc.ci95_half;
  return est;
}

ShapeSnapshot snapshot_shape(const BvmState& state) {
  if (state.size() == 0) throw std::domain_error("snapshot_shape: empty state");
  const LatticeGeometry& g = state.geometry();
  std::vector<LayerStats> per(g.w);
  for (int z = 0; z < g.w; ++z) per[z].layer = z;
  int32_t min_x = INT32_MAX, max_x = INT32_MIN, min_y = INT32_MAX, max_y = INT32_MIN;
  for (const Site& s : state.occupied_sites()) {
    const int32_t cx = g.centered(s.x), cy = g.centered(s.y);
    LayerStats& L = per[s.z];
    if (L.cells == 0) {
      L.min_x = L.max_x = cx;
      L.min_y = L.max_y = cy;
    } else {
      L.min_x = std::min(L.min_x, cx);
      L.max_x = std::max(L.max_x, cx);
      L.min_y = std::min(L.min_y, cy);
      L.max_y = std::max(L.max_y, cy);
    }
    ++L.cells;
    min_x = std::min(min_x, cx);
    max_x = std::max(max_x, cx);
    min_y = std::min(min_y, cy);
    max_y = std::max(max_y, cy);
  }
  ShapeSnapshot out;
  out.cells = state.size();
  out.x_extent = max_x - min_x + 1;
  out.y_extent = max_y - min_y + 1;
  out.aspect_ratio = static_cast<double>(out.x_extent) / static_cast<double>(out.y_extent);
  for (const LayerStats& L : per)
    if (L.cells) out.layers.push_back(L);
  return out;
}

BvmState grow_surviving_clone(double beta, const LatticeGeometry& geom, uint64_t target,
                              uint64_t seed, uint64_t* attempts_out) {
  for (uint64_t attempt = 0;; ++attempt) {
    EventStream stream(seed, attempt);
    BvmState state(geom, beta, {Site{0, 0, 0}});
    StopCondition stop;
    stop.extinct = true;
    stop.size_reached = target;
    const RunResult r = run_until(state, stop, stream);
    if (r.outcome == Outcome::SizeReached) {
      if (attempts_out) *attempts_out = attempt + 1;
      return state;
    }
    if (attempt > 1000000)
      throw std::runtime_error("grow_surviving_clone: no survivor after 1e6 attempts");
  }
}

}  // namespace sv
