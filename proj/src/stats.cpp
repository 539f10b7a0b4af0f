#include "sv/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sv {

MeanCi mean_ci(const std::vector<double>& xs) {
  MeanCi out;
  out.n = xs.size();
  if (xs.empty()) return out;
  double sum = 0.0;
  for (double x : xs) sum += x;
  out.mean = sum / static_cast<double>(xs.size());
  if (xs.size() < 2) return out;
  double ss = 0.0;
  for (double x : xs) ss += (x - out.mean) * (x - out.mean);
  out.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  out.ci95_half = t_quantile_975(xs.size() - 1) * out.sd / std::sqrt(static_cast<double>(xs.size()));
  return out;
}

double t_quantile_975(uint64_t df) {
  if (df == 0) return 0.0;
  if (df == 1) return 12.7062047364;
  if (df == 2) return 4.30265272991;
  if (df == 3) return 3.18244630528;
  if (df == 4) return 2.77644510520;
  const double z = 1.959963984540054;
  const double d = static_cast<double>(df);
  const double z3 = z * z * z, z5 = z3 * z * z, z7 = z5 * z * z;
  // Cornish-Fisher expansion of the t quantile around the normal quantile
  return z + (z3 + z) / (4.0 * d) + (5.0 * z5 + 16.0 * z3 + 3.0 * z) / (96.0 * d * d) +
         (3.0 * z7 + 19.0 * z5 + 17.0 * z3 - 15.0 * z) / (384.0 * d * d * d);
}

double quantile(std::vector<double> xs, double q) {
  if (xs.empty()) throw std::domain_error("quantile: empty sample");
  if (q < 0.0 || q > 1.0) throw std::domain_error("quantile: q outside [0,1]");
  std::sort(xs.begin(), xs.end());
  const double pos = q * static_cast<double>(xs.size() - 1);
  const size_t lo = static_cast<size_t>(pos);
  const double frac = pos - static_cast<double>(lo);
  if (lo + 1 >= xs.size()) return xs.back();
  return xs[lo] * (1.0 - frac) + xs[lo + 1] * frac;
}

double ks_distance(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::domain_error("ks_distance: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

Histogram fd_histogram(const std::vector<double>& xs) {
  Histogram h;
  h.policy = "freedman-diaconis";
  if (xs.empty()) return h;
  const double lo = *std::min_element(xs.begin(), xs.end());
  const double hi = *std::max_element(xs.begin(), xs.end());
  const double iqr = quantile(xs, 0.75) - quantile(xs, 0.25);
  double width = 2.0 * iqr / std::cbrt(static_cast<double>(xs.size()));
  size_t bins = 1;
  if (width > 0.0 && hi > lo) {
    bins = static_cast<size_t>(std::ceil((hi - lo) / width));
    bins = std::min<size_t>(std::max<size_t>(bins, 1), 100000);
  }
  width = (hi > lo) ? (hi - lo) / static_cast<double>(bins) : 1.0;
  h.bin_width = width;
  h.edges.resize(bins + 1);
  for (size_t k = 0; k <= bins; ++k) h.edges[k] = lo + width * static_cast<double>(k);
  h.count.assign(bins, 0);
  for (double x : xs) {
    size_t k = (hi > lo) ? static_cast<size_t>((x - lo) / width) : 0;
    if (k >= bins) k = bins - 1;
    ++h.count[k];
  }
  h.density.resize(bins);
  const double n = static_cast<double>(xs.size());
  for (size_t k = 0; k < bins; ++k)
    h.density[k] = static_cast<double>(h.count[k]) / (n * width);
  return h;
}

}  // namespace sv
