#pragma once

#include <cstdint>
#include <vector>

#include "sv/lattice.hpp"
#include "sv/rng.hpp"

namespace sv {

// Dense 0/1 configuration over a finite window, one bit per site.
class SiteBitset {
 public:
  SiteBitset() = default;
  explicit SiteBitset(uint64_t n) : n_(n), words_((n + 63) / 64, 0) {}
  bool get(uint64_t i) const { return (words_[i >> 6] >> (i & 63)) & 1ull; }
  void set(uint64_t i, bool v) {
    const uint64_t m = 1ull << (i & 63);
    if (v) words_[i >> 6] |= m; else words_[i >> 6] &= ~m;
  }
  uint64_t count() const;
  bool subset_of(const SiteBitset& o) const;
  bool equals_union(const SiteBitset& a, const SiteBitset& b) const;
  uint64_t size() const { return n_; }

 private:
  uint64_t n_ = 0;
  std::vector<uint64_t> words_;
};

// Graphical construction of the biased voter model on a finite window: for
// every ordered neighbor pair (x, y), basic arrows fire at rate 1/|N(x)|
// (y copies x's type regardless) and selective arrows at rate beta/|N(x)|
// (y becomes type 1 only if x is type 1).  One shared arrow stream drives
// every tracked configuration, realizing the standard additive coupling.
class CoupledBvm {
 public:
  CoupledBvm(const LatticeGeometry& geom, double beta,
             const std::vector<std::vector<Site>>& initials);

  uint64_t config_count() const { return configs_.size(); }
  const SiteBitset& config(size_t i) const { return configs_[i]; }
  double time() const { return time_; }
  uint64_t event_count() const { return events_; }

  uint64_t site_index(const Site& s) const;
  Site site_at(uint64_t idx) const;

  struct Event {
    bool fired = false;       // false once past the horizon
    uint64_t source_idx = 0;
    uint64_t target_idx = 0;
    bool selective = false;   // acts only when the source is type 1
    double time = 0.0;
  };

  // one shared arrow applied to every configuration
  Event step(EventStream& stream, double horizon);
  void run_to(double T, EventStream& stream);

  std::vector<Site> occupied_sites(size_t config_idx) const;

 private:
  LatticeGeometry geom_;
  double beta_;
  int32_t L_ = 0;
  uint64_t n_sites_ = 0;
  std::vector<SiteBitset> configs_;
  double time_ = 0.0;
  uint64_t events_ = 0;
};

}  // namespace sv
