#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace sv {

struct MeanCi {
  double mean = 0.0;
  double sd = 0.0;
  double ci95_half = 0.0;  // Student-t 95% half-width
  uint64_t n = 0;
};

MeanCi mean_ci(const std::vector<double>& xs);

// two-sided 97.5% Student-t quantile (Cornish-Fisher expansion in 1/df)
double t_quantile_975(uint64_t df);

inline double binomial_se(double p, uint64_t n) {
  return n == 0 ? 0.0 : std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

// linear-interpolation sample quantile (type 7); q in [0,1]; sorts a copy
double quantile(std::vector<double> xs, double q);

// two-sample Kolmogorov-Smirnov distance; sorts copies
double ks_distance(std::vector<double> a, std::vector<double> b);

struct Histogram {
  std::vector<double> edges;   // size bins+1
  std::vector<uint64_t> count; // size bins
  std::vector<double> density; // count / (n * width)
  double bin_width = 0.0;
  std::string policy;          // e.g. "freedman-diaconis"
};

// Freedman-Diaconis binning; falls back to a single bin for degenerate data
Histogram fd_histogram(const std::vector<double>& xs);

}  // namespace sv
