#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "sv/lattice.hpp"
#include "sv/rng.hpp"

namespace sv {

struct DualParticle {
  uint64_t id = 0;
  Site pos;
  uint64_t parent = kRootParent;
  double birth_time = 0.0;

  static constexpr uint64_t kRootParent = UINT64_MAX;
};

// Dual branching-coalescing random walk: each particle jumps to a uniformly
// chosen neighbor at rate 1 and branches at rate beta, placing the daughter
// at a uniformly chosen neighbor.  Whenever two particles occupy one site
// they coalesce immediately; the surviving particle keeps the smaller id.
class DualState {
 public:
  DualState(const LatticeGeometry& geom, double beta, const std::vector<Site>& initial);

  const LatticeGeometry& geometry() const { return geom_; }
  double beta() const { return beta_; }
  double time() const { return time_; }
  uint64_t particle_count() const { return parts_.size(); }
  uint64_t event_count() const { return events_; }
  const std::vector<DualParticle>& particles() const { return parts_; }
  bool occupies(const Site& s) const { return occ_.count(pack_site(geom_.canonical(s))) != 0; }

  // one jump-or-branch event; false once the horizon would be crossed
  bool step(EventStream& stream, double horizon);
  void run_to(double T, EventStream& stream);

  bool check_occupancy_consistency() const;

 private:
  LatticeGeometry geom_;
  double beta_;
  std::vector<DualParticle> parts_;
  std::unordered_map<uint64_t, uint32_t, SiteHash> occ_;  // packed site -> index
  double time_ = 0.0;
  uint64_t events_ = 0;
  uint64_t next_id_ = 0;

  void remove_particle(uint32_t idx);
};

struct DualityResult {
  double p_forward = 0.0;  // P(xi_t^A meets B)
  double p_dual = 0.0;     // P(zeta_t^B meets A)
  double se = 0.0;         // pooled standard error
  double z = 0.0;          // standardized difference
  uint64_t reps = 0;
};

// Monte Carlo check of P(xi_t^A cap B != 0) = P(zeta_t^B cap A != 0) on a
// periodic torus, with independent streams for the two sides.
DualityResult duality_check(const std::vector<Site>& A, const std::vector<Site>& B, double t,
                            double beta, const LatticeGeometry& geom, uint64_t reps,
                            uint64_t seed, int workers = 0);

}  // namespace sv
