#pragma once

#include <cstdint>
#include <vector>

#include "sv/lattice.hpp"

namespace sv {

// Exact distribution of the rate-alpha SSRW on Z^d x Z_w (periodic) at time
// t, on the planar box |x|,|y| <= radius, by uniformization: a Poisson(alpha
// t) mixture over convolution powers of the one-step kernel.  Mass leaving
// the box and the truncated Poisson tail are tracked; their sum bounds the
// total error.
class LcltExact {
 public:
  // pre: radius >= 6 * sqrt(alpha * t), which keeps the reported leak below
  // ~1e-12; smaller radii are refused
  LcltExact(int d, int w, double alpha, double t, int32_t radius);

  int d() const { return d_; }
  int w() const { return w_; }
  int32_t radius() const { return radius_; }

  // P(Z_t = (x, y, z)); zero outside the box.  y is ignored for d = 1.
  double prob(int32_t x, int32_t y, int32_t z) const;
  double total_mass() const { return total_mass_; }
  double leak_bound() const { return leak_; }

 private:
  int d_;
  int w_;
  int32_t radius_;
  int64_t side_;
  std::vector<double> dist_;  // (side^d) * w, layer-major last
  double total_mass_ = 0.0;
  double leak_ = 0.0;

  size_t index(int32_t x, int32_t y, int32_t z) const;
};

}  // namespace sv
