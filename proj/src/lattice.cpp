#include "sv/lattice.hpp"

#include <numbers>

namespace sv {

double mu_w(int w, bool allow_w1) {
  if (w < 1) throw std::domain_error("mu_w: w must be >= 1");
  if (w == 1) {
    if (!allow_w1) throw std::domain_error("mu_w: w = 1 requires allow_w1");
    return std::numbers::pi;
  }
  return p_same_layer(w).value() * std::numbers::pi * w;
}

}  // namespace sv
