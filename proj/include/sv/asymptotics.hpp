#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sv/lattice.hpp"

// Closed-form evaluators for the small-beta theory: the clone propagation
// speed c_w(beta), the scales h(beta) and tau(beta), population-growth and
// spacetime-volume inversion times, and the initiation metaparameter Gamma.
// All logarithms are natural; every formula requires log(1/beta) > 1, i.e.
// beta in (0, 1/e), so that the square roots stay real and h, tau monotone.

namespace sv {

inline void require_beta_domain(double beta) {
  if (!(beta > 0.0) || !(beta <= 1.0 / std::numbers::e))
    throw std::domain_error("beta must lie in (0, 1/e]");
}

// h(beta) = (1/beta) * log(1/beta)
inline double h_beta(double beta) {
  if (!(beta > 0.0) || !(beta < 1.0)) throw std::domain_error("h_beta: beta must lie in (0,1)");
  return std::log(1.0 / beta) / beta;
}

// tau(beta) = (1/beta) / sqrt(log(1/beta))
inline double tau_beta(double beta) {
  require_beta_domain(beta);
  return 1.0 / (beta * std::sqrt(std::log(1.0 / beta)));
}

// a_w = p_w * sqrt(pi * w)
inline double a_w(int w) {
  return p_same_layer(w).value() * std::sqrt(std::numbers::pi * w);
}

// c_w(beta) = p_w * sqrt(pi w beta) / sqrt(log(1/beta)) = a_w / sqrt(h(beta))
inline double c_w_asym(double beta, int w) {
  require_beta_domain(beta);
  return p_same_layer(w).value() * std::sqrt(std::numbers::pi * w * beta / std::log(1.0 / beta));
}

// time for the type-1 population to reach size N: (p_w pi w)^(-1) h^(1/2) N^(1/2)
inline double t_w_of_N(double N, double beta, int w) {
  require_beta_domain(beta);
  if (!(N >= 1.0)) throw std::domain_error("t_w_of_N: N must be >= 1");
  return std::sqrt(h_beta(beta) * N) / (p_same_layer(w).value() * std::numbers::pi * w);
}

// time to accumulate spacetime volume V: 3^(1/3) (p_w pi w)^(-2/3) h^(1/3) V^(1/3)
inline double t_w_of_V(double V, double beta, int w) {
  require_beta_domain(beta);
  if (!(V >= 0.0)) throw std::domain_error("t_w_of_V: V must be >= 0");
  const double pw_pi_w = p_same_layer(w).value() * std::numbers::pi * w;
  return std::cbrt(3.0 * V * h_beta(beta) / (pw_pi_w * pw_pi_w));
}

// Gamma = N^3 (u1 beta)^3 c_w(beta)^(-2) (u2 beta)^(-1)
inline double gamma_metaparameter(double N, double u1, double u2, double beta, int w) {
  require_beta_domain(beta);
  if (!(N > 0.0) || !(u1 > 0.0) || !(u2 > 0.0))
    throw std::domain_error("gamma_metaparameter: N, u1, u2 must be > 0");
  const double c = c_w_asym(beta, w);
  const double a = N * u1 * beta;
  return a * a * a / (c * c * u2 * beta);
}

}  // namespace sv
