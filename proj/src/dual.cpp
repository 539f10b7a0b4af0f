#include "sv/dual.hpp"

#include <algorithm>
#include <stdexcept>

#include "sv/parallel.hpp"
#include "sv/stats.hpp"
#include "sv/voter.hpp"

namespace sv {

DualState::DualState(const LatticeGeometry& geom, double beta, const std::vector<Site>& initial)
    : geom_(geom), beta_(beta) {
  if (beta < 0.0) throw std::domain_error("DualState: beta must be >= 0");
  for (const Site& raw : initial) {
    const Site s = geom_.canonical(raw);
    const uint64_t key = pack_site(s);
    if (occ_.count(key)) continue;  // initial condition is a set of sites
    occ_.emplace(key, static_cast<uint32_t>(parts_.size()));
    parts_.push_back({next_id_++, s, DualParticle::kRootParent, 0.0});
  }
}

void DualState::remove_particle(uint32_t idx) {
  const uint32_t last = static_cast<uint32_t>(parts_.size()) - 1;
  if (idx != last) {
    parts_[idx] = parts_[last];
    occ_[pack_site(parts_[idx].pos)] = idx;
  }
  parts_.pop_back();
}

bool DualState::step(EventStream& stream, double horizon) {
  if (parts_.empty()) {
    time_ = horizon;
    return false;
  }
  const double total = static_cast<double>(parts_.size()) * (1.0 + beta_);
  const double dt = stream.next_exp(total);
  if (time_ + dt > horizon) {
    time_ = horizon;
    return false;
  }
  time_ += dt;
  ++events_;

  const uint32_t idx = static_cast<uint32_t>(stream.next_below(parts_.size()));
  DualParticle& p = parts_[idx];
  const NeighborList nb = geom_.neighbors(p.pos);
  const Site target = nb.site[stream.next_below(static_cast<uint64_t>(nb.count))];
  const uint64_t tkey = pack_site(target);
  const bool branch = stream.next_unit() < beta_ / (1.0 + beta_);

  const auto hit = occ_.find(tkey);
  if (branch) {
    if (hit != occ_.end()) {
      // daughter lands on an occupied site and coalesces at birth; the
      // occupant survives (it carries the smaller id)
      return true;
    }
    occ_.emplace(tkey, static_cast<uint32_t>(parts_.size()));
    parts_.push_back({next_id_++, target, p.id, time_});
    return true;
  }
  // jump
  if (hit != occ_.end()) {
    DualParticle& other = parts_[hit->second];
    other.id = std::min(other.id, p.id);
    occ_.erase(pack_site(p.pos));
    remove_particle(idx);
    return true;
  }
  occ_.erase(pack_site(p.pos));
  p.pos = target;
  occ_.emplace(tkey, idx);
  return true;
}

void DualState::run_to(double T, EventStream& stream) {
  while (step(stream, T)) {
  }
}

bool DualState::check_occupancy_consistency() const {
  if (occ_.size() != parts_.size()) return false;
  for (const auto& [key, idx] : occ_) {
    if (idx >= parts_.size()) return false;
    if (pack_site(parts_[idx].pos) != key) return false;
  }
  return true;
}

DualityResult duality_check(const std::vector<Site>& A, const std::vector<Site>& B, double t,
                            double beta, const LatticeGeometry& geom, uint64_t reps,
                            uint64_t seed, int workers) {
  if (!geom.bounded() || geom.bc != VerticalBc::Periodic)
    throw std::invalid_argument("duality_check: requires a periodic finite torus");
  if (A.empty() || B.empty()) throw std::invalid_argument("duality_check: A and B must be nonempty");
  if (workers <= 0) workers = default_workers();

  auto forward = [&](uint64_t, EventStream& stream) -> uint8_t {
    BvmState state(geom, beta, A);
    StopCondition stop;
    stop.time_reached = t;
    run_until(state, stop, stream);
    for (const Site& b : B)
      if (state.occupied(b)) return 1;
    return 0;
  };
  auto dual = [&](uint64_t, EventStream& stream) -> uint8_t {
    DualState state(geom, beta, B);
    state.run_to(t, stream);
    for (const Site& a : A)
      if (state.occupies(a)) return 1;
    return 0;
  };

  const auto fwd = parallel_map<uint8_t>(reps, seed, 1, workers, forward);
  const auto dua = parallel_map<uint8_t>(reps, seed, 1'000'000'007ull, workers, dual);

  DualityResult res;
  res.reps = reps;
  uint64_t hf = 0, hd = 0;
  for (uint8_t v : fwd) hf += v;
  for (uint8_t v : dua) hd += v;
  res.p_forward = static_cast<double>(hf) / static_cast<double>(reps);
  res.p_dual = static_cast<double>(hd) / static_cast<double>(reps);
  const double vf = res.p_forward * (1.0 - res.p_forward) / static_cast<double>(reps);
  const double vd = res.p_dual * (1.0 - res.p_dual) / static_cast<double>(reps);
  res.se = std::sqrt(vf + vd);
  res.z = res.se > 0.0 ? (res.p_forward - res.p_dual) / res.se : 0.0;
  return res;
}

}  // namespace sv
