#include "sv/rng.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace sv {

namespace {
constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// gamma-mixing from SplittableRandom: distinct odd increments per stream
uint64_t mix_gamma(uint64_t z) {
  z = (z ^ (z >> 33)) * 0xFF51AFD7ED558CCDull;
  z = (z ^ (z >> 33)) * 0xC4CEB9FE1A85EC53ull;
  z = (z ^ (z >> 33)) | 1ull;
  if (std::popcount(z ^ (z >> 1)) < 24) z ^= 0xAAAAAAAAAAAAAAAAull;
  return z;
}
}  // namespace

EventStream::EventStream(uint64_t seed, uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  state_ = mix64(seed ^ mix64(stream_id + kGolden));
  gamma_ = mix_gamma(state_ + kGolden + stream_id * kGolden);
}

double EventStream::next_exp(double rate) {
  if (!(rate > 0.0)) throw std::domain_error("next_exp: rate must be > 0");
  return -std::log1p(-next_unit()) / rate;
}

double EventStream::next_normal() {
  for (;;) {
    const double u = 2.0 * next_unit() - 1.0;
    const double v = 2.0 * next_unit() - 1.0;
    const double s = u * u + v * v;
    if (s >= 1.0 || s == 0.0) continue;
    return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

double EventStream::next_gamma(double shape) {
  if (!(shape >= 1.0)) throw std::domain_error("next_gamma: shape must be >= 1");
  // Marsaglia-Tsang squeeze
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = next_normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = next_unit();
    if (u < 1.0 - 0.0331 * (x * x) * (x * x)) return d * v;
    if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

uint64_t EventStream::next_poisson(double mean) {
  if (!(mean >= 0.0)) throw std::domain_error("next_poisson: mean must be >= 0");
  if (mean == 0.0) return 0;
  if (mean < 10.0) {
    // multiplication method
    const double limit = std::exp(-mean);
    uint64_t k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= next_unit();
    } while (p > limit);
    return k - 1;
  }
  // PTRS transformed rejection (Hormann 1993)
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = next_unit() - 0.5;
    const double v = next_unit();
    const double us = 0.5 - std::fabs(u);
    const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<uint64_t>(kf);
    if (kf < 0.0 || (us < 0.013 && v > us)) continue;
    const double k = kf;
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        k * loglam - mean - std::lgamma(k + 1.0)) {
      return static_cast<uint64_t>(kf);
    }
  }
}

}  // namespace sv
