#include "sv/coupled.hpp"

#include <bit>
#include <stdexcept>

namespace sv {

uint64_t SiteBitset::count() const {
  uint64_t c = 0;
  for (uint64_t w : words_) c += std::popcount(w);
  return c;
}

bool SiteBitset::subset_of(const SiteBitset& o) const {
  for (size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~o.words_[i]) return false;
  return true;
}

bool SiteBitset::equals_union(const SiteBitset& a, const SiteBitset& b) const {
  for (size_t i = 0; i < words_.size(); ++i)
    if (words_[i] != (a.words_[i] | b.words_[i])) return false;
  return true;
}

CoupledBvm::CoupledBvm(const LatticeGeometry& geom, double beta,
                       const std::vector<std::vector<Site>>& initials)
    : geom_(geom), beta_(beta) {
  if (!geom.bounded())
    throw std::invalid_argument("CoupledBvm: shared-stream mode requires a finite window");
  if (beta < 0.0) throw std::domain_error("CoupledBvm: beta must be >= 0");
  L_ = *geom.window;
  n_sites_ = static_cast<uint64_t>(geom.site_count());
  configs_.reserve(initials.size());
  for (const auto& init : initials) {
    SiteBitset cfg(n_sites_);
    for (const Site& raw : init) cfg.set(site_index(geom_.canonical(raw)), true);
    configs_.push_back(std::move(cfg));
  }
}

uint64_t CoupledBvm::site_index(const Site& s) const {
  return (static_cast<uint64_t>(s.z) * L_ + s.y) * L_ + s.x;
}

Site CoupledBvm::site_at(uint64_t idx) const {
  Site s;
  s.x = static_cast<int32_t>(idx % L_);
  s.y = static_cast<int32_t>((idx / L_) % L_);
  s.z = static_cast<int32_t>(idx / (static_cast<uint64_t>(L_) * L_));
  return s;
}

CoupledBvm::Event CoupledBvm::step(EventStream& stream, double horizon) {
  Event ev;
  // each site x contributes sum_y 1/|N(x)| = 1 basic and beta selective
  const double total = static_cast<double>(n_sites_) * (1.0 + beta_);
  const double dt = stream.next_exp(total);
  if (time_ + dt > horizon) {
    time_ = horizon;
    return ev;
  }
  time_ += dt;
  ++events_;

  const Site x = site_at(stream.next_below(n_sites_));
  const NeighborList nb = geom_.neighbors(x);
  const Site y = nb.site[stream.next_below(static_cast<uint64_t>(nb.count))];
  const bool selective = stream.next_unit() < beta_ / (1.0 + beta_);

  const uint64_t xi = site_index(x), yi = site_index(y);
  for (SiteBitset& cfg : configs_) {
    const bool x_one = cfg.get(xi);
    if (selective) {
      if (x_one) cfg.set(yi, true);  // selective arrows act only for type-1 sources
    } else {
      cfg.set(yi, x_one);            // basic arrows copy the source type
    }
  }
  ev.fired = true;
  ev.source_idx = xi;
  ev.target_idx = yi;
  ev.selective = selective;
  ev.time = time_;
  return ev;
}

void CoupledBvm::run_to(double T, EventStream& stream) {
  while (step(stream, T).fired) {
  }
}

std::vector<Site> CoupledBvm::occupied_sites(size_t config_idx) const {
  std::vector<Site> out;
  const SiteBitset& cfg = configs_[config_idx];
  for (uint64_t i = 0; i < n_sites_; ++i)
    if (cfg.get(i)) out.push_back(site_at(i));
  return out;
}

}  // namespace sv
