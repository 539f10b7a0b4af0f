#include "sv/lclt_exact.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sv {

namespace {

// Poisson(lam) pmf values 0..nmax with total tail mass beyond nmax; stable
// in log space
std::vector<double> poisson_weights(double lam, uint64_t nmax, double* tail) {
  std::vector<double> w(nmax + 1);
  double logw = -lam;  // log pmf at 0
  double sum = 0.0;
  for (uint64_t n = 0; n <= nmax; ++n) {
    if (n > 0) logw += std::log(lam) - std::log(static_cast<double>(n));
    w[n] = std::exp(logw);
    sum += w[n];
  }
  *tail = std::max(0.0, 1.0 - sum);
  return w;
}

}  // namespace

LcltExact::LcltExact(int d, int w, double alpha, double t, int32_t radius)
    : d_(d), w_(w), radius_(radius), side_(2 * static_cast<int64_t>(radius) + 1) {
  if (d != 1 && d != 2) throw std::domain_error("LcltExact: d must be 1 or 2");
  if (w < 1) throw std::domain_error("LcltExact: w must be >= 1");
  if (!(alpha > 0.0) || !(t >= 0.0)) throw std::domain_error("LcltExact: bad alpha or t");
  const double lam = alpha * t;
  if (static_cast<double>(radius) < 6.0 * std::sqrt(lam))
    throw std::domain_error("LcltExact: radius below 6*sqrt(alpha*t), leak bound violated");

  const size_t cells = static_cast<size_t>(d == 2 ? side_ * side_ : side_) * w;
  std::vector<double> v(cells, 0.0), next(cells, 0.0);
  dist_.assign(cells, 0.0);
  v[index(0, 0, 0)] = 1.0;

  // number of uniformization steps: Poisson tail below 1e-15
  uint64_t nmax = static_cast<uint64_t>(lam + 12.0 * std::sqrt(lam + 1.0)) + 40;
  double tail = 0.0;
  const std::vector<double> wts = poisson_weights(lam, nmax, &tail);

  const int k = 2 * d + (w == 1 ? 0 : (w == 2 ? 1 : 2));
  const double inv_k = 1.0 / static_cast<double>(k);
  const int32_t R = radius_;

  for (size_t i = 0; i < cells; ++i) dist_[i] += wts[0] * v[i];
  for (uint64_t n = 1; n <= nmax; ++n) {
    std::fill(next.begin(), next.end(), 0.0);
    for (int32_t z = 0; z < w_; ++z) {
      const int32_t zu = (z + 1 == w_) ? 0 : z + 1;
      const int32_t zd = (z == 0) ? w_ - 1 : z - 1;
      for (int32_t y = (d_ == 2 ? -R : 0); y <= (d_ == 2 ? R : 0); ++y) {
        for (int32_t x = -R; x <= R; ++x) {
          const double m = v[index(x, y, z)];
          if (m == 0.0) continue;
          const double share = m * inv_k;
          if (x + 1 <= R) next[index(x + 1, y, z)] += share;
          if (x - 1 >= -R) next[index(x - 1, y, z)] += share;
          if (d_ == 2) {
            if (y + 1 <= R) next[index(x, y + 1, z)] += share;
            if (y - 1 >= -R) next[index(x, y - 1, z)] += share;
          }
          if (w_ == 2) {
            next[index(x, y, zu)] += share;
          } else if (w_ > 2) {
            next[index(x, y, zu)] += share;
            next[index(x, y, zd)] += share;
          }
        }
      }
    }
    v.swap(next);
    const double wn = wts[n];
    if (wn > 0.0) {
      for (size_t i = 0; i < cells; ++i) dist_[i] += wn * v[i];
    }
  }
  for (double p : dist_) total_mass_ += p;
  leak_ = std::max(0.0, 1.0 - total_mass_);
}

size_t LcltExact::index(int32_t x, int32_t y, int32_t z) const {
  const int64_t xi = static_cast<int64_t>(x) + radius_;
  if (d_ == 1) return static_cast<size_t>(z * side_ + xi);
  const int64_t yi = static_cast<int64_t>(y) + radius_;
  return static_cast<size_t>((static_cast<int64_t>(z) * side_ + yi) * side_ + xi);
}

double LcltExact::prob(int32_t x, int32_t y, int32_t z) const {
  if (z < 0 || z >= w_) throw std::domain_error("LcltExact::prob: layer out of range");
  if (x < -radius_ || x > radius_) return 0.0;
  if (d_ == 2 && (y < -radius_ || y > radius_)) return 0.0;
  return dist_[index(x, d_ == 2 ? y : 0, z)];
}

}  // namespace sv
