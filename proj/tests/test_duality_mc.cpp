#include <cmath>

#include "doctest.h"
#include "sv/dual.hpp"
#include "sv/rng.hpp"

using namespace sv;

TEST_CASE("duality at t = 0 is an exact identity") {
  const LatticeGeometry g(3, VerticalBc::Periodic, 9);
  const std::vector<Site> A{{0, 0, 0}};
  const DualityResult r = duality_check(A, A, 0.0, 0.2, g, 200, 101);
  CHECK(r.p_forward == 1.0);
  CHECK(r.p_dual == 1.0);
  CHECK(r.z == 0.0);
}

TEST_CASE("distant sets at small t give near-zero probabilities on both sides") {
  const LatticeGeometry g(3, VerticalBc::Periodic, 15);
  const DualityResult r =
      duality_check({{0, 0, 0}}, {{7, 7, 1}}, 0.5, 0.2, g, 2000, 103);
  CHECK(r.p_forward < 0.01);
  CHECK(r.p_dual < 0.01);
  CHECK(std::fabs(r.z) < 3.0);
}

TEST_CASE("randomized instances agree within 3 SE") {
  const LatticeGeometry g(3, VerticalBc::Periodic, 9);
  EventStream rng(105, 0);
  int good = 0;
  const int instances = 3;
  for (int inst = 0; inst < instances; ++inst) {
    std::vector<Site> A, B;
    const int na = 1 + static_cast<int>(rng.next_below(3));
    const int nb = 1 + static_cast<int>(rng.next_below(3));
    for (int i = 0; i < na; ++i)
      A.push_back({static_cast<int32_t>(rng.next_below(9)),
                   static_cast<int32_t>(rng.next_below(9)),
                   static_cast<int32_t>(rng.next_below(3))});
    for (int i = 0; i < nb; ++i)
      B.push_back({static_cast<int32_t>(rng.next_below(9)),
                   static_cast<int32_t>(rng.next_below(9)),
                   static_cast<int32_t>(rng.next_below(3))});
    const double t = 0.5 + 0.5 * static_cast<double>(inst);
    const DualityResult r = duality_check(A, B, t, 0.2, g, 20000, 107 + inst);
    if (std::fabs(r.z) < 3.0) ++good;
  }
  CHECK(good == instances);
}

TEST_CASE("duality pre-conditions") {
  const LatticeGeometry unbounded(3, VerticalBc::Periodic);
  CHECK_THROWS_AS(duality_check({{0, 0, 0}}, {{1, 0, 0}}, 1.0, 0.2, unbounded, 10, 1),
                  std::invalid_argument);
  const LatticeGeometry reflecting(3, VerticalBc::Reflecting, 9);
  CHECK_THROWS_AS(duality_check({{0, 0, 0}}, {{1, 0, 0}}, 1.0, 0.2, reflecting, 10, 1),
                  std::invalid_argument);
  const LatticeGeometry g(3, VerticalBc::Periodic, 9);
  CHECK_THROWS_AS(duality_check({}, {{1, 0, 0}}, 1.0, 0.2, g, 10, 1), std::invalid_argument);
}
