#include "sv/oncogenesis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sv/asymptotics.hpp"
#include "sv/parallel.hpp"

namespace sv {

void TwoStepParams::validate(bool require_integer_side) const {
  if (!(N >= 1.0)) throw std::domain_error("TwoStepParams: N must be >= 1");
  if (w < 1) throw std::domain_error("TwoStepParams: w must be >= 1");
  require_beta_domain(beta1);
  require_beta_domain(beta2);
  if (!(u1 > 0.0) || !(u2 > 0.0)) throw std::domain_error("TwoStepParams: rates must be > 0");
  if (require_integer_side) {
    const double L = std::sqrt(N / static_cast<double>(w));
    if (std::fabs(L - std::round(L)) > 1e-9)
      throw std::domain_error("TwoStepParams: N = L^2 w needs an integer side L");
  }
}

double TwoStepParams::clone_rate() const { return N * u1 * beta1 / (1.0 + beta1); }
double TwoStepParams::success_u2() const { return u2 * beta2 / (1.0 + beta2); }

double TwoStepParams::growth_coeff() const {
  const double c = c_w_asym(beta1, w);
  return std::numbers::pi * w * c * c;
}

double TwoStepParams::cap_age() const { return std::sqrt(N / growth_coeff()); }

namespace {

// state of the piecewise hazard walker shared by both samplers
struct HazardWalker {
  const TwoStepParams& p;
  EventStream& arrivals_stream;
  double A;         // v(a) = A a^2 before the cap
  double u2p;
  double a_cap;
  double lam1;
  std::vector<double> arrivals;  // sorted by construction
  size_t first_uncapped = 0;
  double t;          // current segment start
  double next_arr;

  explicit HazardWalker(const TwoStepParams& params, EventStream& s)
      : p(params), arrivals_stream(s) {
    A = params.growth_coeff();
    u2p = params.success_u2();
    a_cap = params.cap_age();
    lam1 = params.clone_rate();
    t = arrivals_stream.next_exp(lam1);
    arrivals.push_back(t);
    next_arr = t + arrivals_stream.next_exp(lam1);
  }

  // next breakpoint distance: next clone arrival or oldest active clone cap
  double segment_length(bool* is_arrival) const {
    double s = next_arr - t;
    *is_arrival = true;
    if (first_uncapped < arrivals.size()) {
      const double to_cap = a_cap - (t - arrivals[first_uncapped]);
      if (to_cap < s) {
        s = to_cap;
        *is_arrival = false;
      }
    }
    return s;
  }

  // integrated intensity over [t, t+s]
  double segment_hazard(double s) const {
    double cubic = 0.0;
    for (size_t i = first_uncapped; i < arrivals.size(); ++i) {
      const double a = t - arrivals[i];
      const double b = a + s;
      cubic += b * b * b - a * a * a;
    }
    const double capped = static_cast<double>(first_uncapped);
    return u2p * (A * cubic / 3.0 + capped * p.N * s);
  }

  // intensity at offset s into the segment
  double intensity(double s) const {
    double quad = 0.0;
    for (size_t i = first_uncapped; i < arrivals.size(); ++i) {
      const double a = t - arrivals[i] + s;
      quad += a * a;
    }
    return u2p * (A * quad + static_cast<double>(first_uncapped) * p.N);
  }

  // monotone inversion of segment_hazard on (0, s_max]
  double invert(double target, double s_max) const {
    double lo = 0.0, hi = s_max;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, hi); ++it) {
      const double mid = 0.5 * (lo + hi);
      if (segment_hazard(mid) < target) lo = mid;
      else hi = mid;
    }
    return 0.5 * (lo + hi);
  }

  void advance(double s, bool is_arrival) {
    t += s;
    if (is_arrival) {
      t = next_arr;  // avoid drift
      arrivals.push_back(next_arr);
      next_arr = t + arrivals_stream.next_exp(lam1);
    } else {
      ++first_uncapped;
    }
  }

  InitiationSample finish(double sigma2, EventStream& select_stream) const {
    InitiationSample out;
    out.sigma2 = sigma2;
    out.clone_count = arrivals.size();
    std::vector<double> vols(arrivals.size());
    double total = 0.0;
    for (size_t i = 0; i < arrivals.size(); ++i) {
      const double age = sigma2 - arrivals[i];
      vols[i] = std::min(A * age * age, p.N);
      total += vols[i];
    }
    // the initiating clone is volume-size-biased at sigma2
    double pick = select_stream.next_unit() * total;
    size_t chosen = vols.size() - 1;
    for (size_t i = 0; i < vols.size(); ++i) {
      if (pick < vols[i]) {
        chosen = i;
        break;
      }
      pick -= vols[i];
    }
    out.local_field = vols[chosen];
    out.initiating_clone_age = sigma2 - arrivals[chosen];
    return out;
  }
};

}  // namespace

InitiationSample sample_initiation(const TwoStepParams& params, uint64_t seed, uint64_t rep,
                                   Sigma2Sampler sampler) {
  params.validate();
  EventStream arrivals_stream(seed, rep * 4 + 0);
  EventStream hazard_stream(seed, rep * 4 + 1);
  EventStream select_stream(seed, rep * 4 + 2);
  HazardWalker walker(params, arrivals_stream);

  if (sampler == Sigma2Sampler::HazardInversion) {
    const double target = hazard_stream.next_exp(1.0);
    double acc = 0.0;
    for (;;) {
      bool is_arrival = false;
      const double s_bp = walker.segment_length(&is_arrival);
      const double H = walker.segment_hazard(s_bp);
      if (acc + H >= target) {
        const double s = walker.invert(target - acc, s_bp);
        return walker.finish(walker.t + s, select_stream);
      }
      acc += H;
      walker.advance(s_bp, is_arrival);
    }
  }

  // thinning against the per-segment dominating rate (intensity increases
  // within a segment, so the right endpoint bounds it)
  for (;;) {
    bool is_arrival = false;
    const double s_bp = walker.segment_length(&is_arrival);
    const double bound = walker.intensity(s_bp);
    if (bound > 0.0) {
      double s = 0.0;
      for (;;) {
        s += hazard_stream.next_exp(bound);
        if (s >= s_bp) break;
        if (hazard_stream.next_unit() <= walker.intensity(s) / bound)
          return walker.finish(walker.t + s, select_stream);
      }
    }
    walker.advance(s_bp, is_arrival);
  }
}

Sigma2Stats sigma2_stats(const TwoStepParams& params, uint64_t reps, uint64_t seed, int workers,
                         Sigma2Sampler sampler, bool keep_samples) {
  params.validate();
  if (reps < 1) throw std::domain_error("sigma2_stats: reps must be >= 1");
  if (workers <= 0) workers = default_workers();

  auto one = [&](uint64_t rep, EventStream&) -> InitiationSample {
    return sample_initiation(params, seed, rep, sampler);
  };
  std::vector<InitiationSample> samples =
      parallel_map<InitiationSample>(reps, seed, 0, workers, one);

  Sigma2Stats out;
  out.reps = reps;
  std::vector<double> s2(reps);
  for (uint64_t i = 0; i < reps; ++i) s2[i] = samples[i].sigma2;
  const MeanCi mc = mean_ci(s2);
  out.mean = mc.mean;
  out.sd = mc.sd;
  out.q05 = quantile(s2, 0.05);
  out.q25 = quantile(s2, 0.25);
  out.q50 = quantile(s2, 0.50);
  out.q75 = quantile(s2, 0.75);
  out.q95 = quantile(s2, 0.95);
  out.histogram = fd_histogram(s2);
  if (keep_samples) out.samples = std::move(samples);
  return out;
}

FieldHistResult field_hist_conditional(const TwoStepParams& params, double t, double dt,
                                       uint64_t reps, uint64_t seed, int workers,
                                       uint64_t min_accepted) {
  params.validate();
  if (!(dt > 0.0)) throw std::domain_error("field_hist_conditional: dt must be > 0");
  if (workers <= 0) workers = default_workers();

  auto one = [&](uint64_t rep, EventStream&) -> InitiationSample {
    return sample_initiation(params, seed, rep);
  };
  const std::vector<InitiationSample> samples =
      parallel_map<InitiationSample>(reps, seed, 0, workers, one);

  FieldHistResult out;
  out.draws = reps;
  const double c = c_w_asym(params.beta1, params.w);
  const double vmax = std::numbers::pi * params.w * c * c * (t + dt) * (t + dt);
  out.support_bound = std::min(vmax, params.N);
  for (const InitiationSample& s : samples) {
    if (std::fabs(s.sigma2 - t) > dt) continue;
    out.accepted.push_back(s.local_field);
    if (s.local_field > out.support_bound * (1.0 + 1e-12)) out.support_ok = false;
  }
  out.acceptance = static_cast<double>(out.accepted.size()) / static_cast<double>(reps);
  out.partial = out.accepted.size() < min_accepted;
  if (!out.accepted.empty()) out.histogram = fd_histogram(out.accepted);
  return out;
}

const char* regime_name(GammaRegime r) {
  switch (r) {
    case GammaRegime::SmallGamma: return "small";
    case GammaRegime::Intermediate: return "intermediate";
    case GammaRegime::LargeGamma: return "large";
  }
  return "?";
}

RegimeLabel regime_label(const TwoStepParams& params, double small_threshold,
                         double large_threshold) {
  params.validate();
  RegimeLabel out;
  out.small_threshold = small_threshold;
  out.large_threshold = large_threshold;
  // Gamma = N^3 (u1 b1)^3 c_w(b1)^{-2} (u2 b2)^{-1}
  const double c = c_w_asym(params.beta1, params.w);
  const double a = params.N * params.u1 * params.beta1;
  out.gamma = a * a * a / (c * c * params.u2 * params.beta2);
  if (out.gamma < small_threshold) out.regime = GammaRegime::SmallGamma;
  else if (out.gamma > large_threshold) out.regime = GammaRegime::LargeGamma;
  else out.regime = GammaRegime::Intermediate;
  return out;
}

}  // namespace sv
