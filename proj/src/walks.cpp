#include "sv/walks.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "sv/asymptotics.hpp"
#include "sv/parallel.hpp"
#include "sv/stats.hpp"

namespace sv {

StepTable make_step_table(int d, int w) {
  if (d != 1 && d != 2) throw std::domain_error("make_step_table: d must be 1 or 2");
  if (w < 1) throw std::domain_error("make_step_table: w must be >= 1");
  StepTable t;
  t.d = d;
  t.w = w;
  int k = 0;
  t.dx[k++] = 1;
  t.dx[k++] = -1;
  if (d == 2) {
    t.dy[k++] = 1;
    t.dy[k++] = -1;
  }
  if (w == 2) {
    t.dz[k++] = 1;
  } else if (w > 2) {
    t.dz[k++] = 1;
    t.dz[k++] = w - 1;  // -1 mod w
  }
  t.k = k;
  return t;
}

BranchClassCounts classify_branch_events(double beta, int w, uint64_t reps, uint64_t seed,
                                         double alpha, int workers) {
  require_beta_domain(beta);
  if (w < 1) throw std::domain_error("classify_branch_events: w must be >= 1");
  if (reps < 1) throw std::domain_error("classify_branch_events: reps must be >= 1");
  if (!(alpha > 0.0)) throw std::domain_error("classify_branch_events: alpha must be > 0");
  if (workers <= 0) workers = default_workers();

  const double tau = tau_beta(beta);
  const double rate = 2.0 * alpha;  // difference walk
  const StepTable tbl = make_step_table(2, w);

  auto one = [&](uint64_t, EventStream& stream) -> uint8_t {
    const double S = stream.next_exp(beta);
    const double cap = std::min(S, tau);
    WalkPos pos;
    apply_step(tbl, pos, stream.next_below(tbl.k));  // uniform neighbor of 0
    double t = 0.0;
    for (;;) {
      t += stream.next_exp(rate);
      if (t > cap) return S <= tau ? 1 : 2;
      apply_step(tbl, pos, stream.next_below(tbl.k));
      if (pos.x == 0 && pos.y == 0 && pos.z == 0) return 0;  // T0 = t <= cap
    }
  };
  const std::vector<uint8_t> types = parallel_map<uint8_t>(reps, seed, 0, workers, one);

  BranchClassCounts out;
  out.reps = reps;
  out.tau = tau;
  for (uint8_t ty : types) {
    if (ty == 0) ++out.n0;
    else if (ty == 1) ++out.n1;
    else ++out.n2;
  }
  const double n = static_cast<double>(reps);
  out.alpha0 = static_cast<double>(out.n0) / n;
  out.alpha1 = static_cast<double>(out.n1) / n;
  out.alpha2 = static_cast<double>(out.n2) / n;
  return out;
}

namespace {

// first return time to the origin, exact in distribution; +inf means
// censored at tmax (T0 > tmax).  *steps accumulates jump count.
double first_return_time(const StepTable& tbl, EventStream& stream, double tmax, double alpha,
                         uint64_t* steps) {
  WalkPos pos;
  apply_step(tbl, pos, stream.next_below(tbl.k));
  double T = 0.0;
  for (;;) {
    const double remain = tmax - T;
    const double mean_steps = alpha * remain;
    const uint64_t block =
        static_cast<uint64_t>(mean_steps + 8.0 * std::sqrt(mean_steps + 64.0)) + 16;
    for (uint64_t j = 1; j <= block; ++j) {
      apply_step(tbl, pos, stream.next_below(tbl.k));
      if (pos.x == 0 && pos.y == 0 && pos.z == 0) {
        *steps += j;
        return T + stream.next_gamma(static_cast<double>(j)) / alpha;
      }
    }
    *steps += block;
    T += stream.next_gamma(static_cast<double>(block)) / alpha;
    if (T > tmax) return std::numeric_limits<double>::infinity();
  }
}

}  // namespace

TailResult return_time_tail(int w, double alpha, const std::vector<double>& t_grid,
                            uint64_t reps, uint64_t seed, int workers, uint64_t step_budget) {
  if (w < 1) throw std::domain_error("return_time_tail: w must be >= 1");
  if (!(alpha > 0.0)) throw std::domain_error("return_time_tail: alpha must be > 0");
  if (t_grid.empty()) throw std::domain_error("return_time_tail: empty grid");
  if (reps < 1) throw std::domain_error("return_time_tail: reps must be >= 1");
  if (workers <= 0) workers = default_workers();
  if (step_budget == 0) step_budget = 1ull << 62;

  double tmax = 0.0;
  for (double t : t_grid) {
    if (!(t > 0.0)) throw std::domain_error("return_time_tail: grid times must be > 0");
    tmax = std::max(tmax, t);
  }
  const StepTable tbl = make_step_table(2, w);

  struct Trial {
    double T0 = 0.0;
    uint64_t steps = 0;
  };
  auto one = [&](uint64_t, EventStream& stream) -> Trial {
    Trial tr;
    tr.T0 = first_return_time(tbl, stream, tmax, alpha, &tr.steps);
    return tr;
  };

  TailResult res;
  std::vector<uint64_t> exceed(t_grid.size(), 0);
  const uint64_t wave = std::max<uint64_t>(4096, static_cast<uint64_t>(workers) * 1024);
  uint64_t launched = 0;
  while (launched < reps) {
    if (res.steps_used >= step_budget) {
      res.truncated = true;
      break;
    }
    const uint64_t n = std::min(wave, reps - launched);
    const std::vector<Trial> got = parallel_map<Trial>(n, seed, launched, workers, one);
    for (const Trial& tr : got) {
      res.steps_used += tr.steps;
      for (size_t i = 0; i < t_grid.size(); ++i)
        if (tr.T0 > t_grid[i]) ++exceed[i];
    }
    res.reps_done += n;
    launched += n;
  }

  const double mw = mu_w(w, /*allow_w1=*/true);
  for (size_t i = 0; i < t_grid.size(); ++i) {
    TailPoint pt;
    pt.t = t_grid[i];
    pt.p_hat = res.reps_done ? static_cast<double>(exceed[i]) / static_cast<double>(res.reps_done) : 0.0;
    pt.se = binomial_se(pt.p_hat, res.reps_done);
    pt.r = pt.p_hat * std::log(alpha * pt.t) / mw;
    res.points.push_back(pt);
  }
  return res;
}

double lclt_limit(int d, int w, bool allow_w1) {
  if (d != 1 && d != 2) throw std::domain_error("lclt_limit: d must be 1 or 2");
  double p;
  if (w == 1) {
    if (!allow_w1) throw std::domain_error("lclt_limit: w = 1 requires allow_w1");
    p = 1.0;  // planar walk, no vertical component
  } else {
    p = p_wd(d, w).value();
  }
  const double base = static_cast<double>(d) / (2.0 * std::numbers::pi * p);
  return std::pow(base, 0.5 * d) / static_cast<double>(w);
}

LcltEstimate lclt_estimate(int d, int w, double alpha, double t, const Site& x, uint64_t reps,
                           uint64_t seed, bool allow_w1, int workers, double se_bound) {
  if (d != 1 && d != 2) throw std::domain_error("lclt_estimate: d must be 1 or 2");
  if (w < 1) throw std::domain_error("lclt_estimate: w must be >= 1");
  if (w == 1 && !allow_w1) throw std::domain_error("lclt_estimate: w = 1 requires allow_w1");
  if (!(alpha > 0.0) || !(t >= 0.0)) throw std::domain_error("lclt_estimate: bad alpha or t");
  if (reps < 1) throw std::domain_error("lclt_estimate: reps must be >= 1");
  if (workers <= 0) workers = default_workers();
  if (x.z < 0 || x.z >= w) throw std::domain_error("lclt_estimate: target layer out of range");

  const double scale = std::pow(alpha * t, 0.5 * d);
  const double limit = lclt_limit(d, w, allow_w1);
  if (se_bound > 0.0) {
    // proxy SE at the limiting value; pre-condition on (t, reps)
    const double se_proxy = std::sqrt(limit * scale / static_cast<double>(reps));
    if (se_proxy > se_bound)
      throw std::invalid_argument("lclt_estimate: reps too small for requested SE bound");
  }

  const StepTable tbl = make_step_table(d, w);
  const int32_t tx = x.x, ty = (d == 2) ? x.y : 0, tz = x.z;
  auto one = [&](uint64_t, EventStream& stream) -> uint8_t {
    const uint64_t n = stream.next_poisson(alpha * t);
    WalkPos pos;
    for (uint64_t j = 0; j < n; ++j) apply_step(tbl, pos, stream.next_below(tbl.k));
    return (pos.x == tx && pos.y == ty && pos.z == tz) ? 1 : 0;
  };
  const std::vector<uint8_t> hits = parallel_map<uint8_t>(reps, seed, 0, workers, one);

  LcltEstimate est;
  est.reps = reps;
  for (uint8_t h : hits) est.hits += h;
  est.p_hat = static_cast<double>(est.hits) / static_cast<double>(reps);
  est.scaled = scale * est.p_hat;
  est.limit = limit;
  est.se_scaled = scale * binomial_se(est.p_hat, reps);
  return est;
}

}  // namespace sv
