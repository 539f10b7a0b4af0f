#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sv/lattice.hpp"
#include "sv/rng.hpp"

namespace sv {

// Indexed multiset of ordered discordant pairs, keyed by pack_site(src)*8+dir.
// O(1) insert, erase and uniform selection (swap-with-last).
class PairSet {
 public:
  void insert(uint64_t key) {
    index_.emplace(key, static_cast<uint32_t>(items_.size()));
    items_.push_back(key);
  }
  void erase(uint64_t key) {
    const auto it = index_.find(key);
    const uint32_t pos = it->second;
    index_.erase(it);
    const uint64_t last = items_.back();
    items_.pop_back();
    if (pos < items_.size()) {
      items_[pos] = last;
      index_[last] = pos;
    }
  }
  bool contains(uint64_t key) const { return index_.count(key) != 0; }
  uint64_t select(uint64_t i) const { return items_[i]; }
  uint64_t size() const { return items_.size(); }
  const std::vector<uint64_t>& items() const { return items_; }
  void reserve(size_t n) { items_.reserve(n); index_.reserve(n); }

 private:
  std::vector<uint64_t> items_;
  std::unordered_map<uint64_t, uint32_t, SiteHash> index_;
};

struct EventRecord {
  bool fired = false;       // false: state absorbed, nothing happened
  Site source;              // dividing cell
  Site target;              // replaced cell
  bool target_became_one = false;
  double dt = 0.0;          // waiting time of this event
};

// Biased voter model state.  Type-1 cells divide at rate 1+beta, type-0 at
// rate 1; a division replaces a uniformly chosen neighbor.  Only discordant
// ordered pairs (source, target of different types) are scheduled: same-type
// replacements never change the configuration, so skipping them leaves the
// law of the process (and the embedded jump chain of |xi_t|) untouched while
// making the cost proportional to the boundary, not the volume.
class BvmState {
 public:
  BvmState(const LatticeGeometry& geom, double beta, const std::vector<Site>& initial);

  const LatticeGeometry& geometry() const { return geom_; }
  double beta() const { return beta_; }
  double time() const { return time_; }
  uint64_t event_count() const { return event_count_; }
  uint64_t size() const { return occupied_.size(); }
  bool occupied(const Site& s) const { return occupied_.count(pack_site(geom_.canonical(s))) != 0; }
  int32_t max_abs_x() const { return max_abs_x_; }  // running max over inserted type-1 sites
  uint64_t discordant_count() const;
  double total_rate() const;
  bool absorbed() const { return discordant_count() == 0; }

  // One division event across a discordant pair; pair (x -> y) fires with
  // probability proportional to rate(x)/|N(x)|.  Returns fired=false when
  // the state is absorbed (no discordant pair left) or when the next event
  // would land beyond `horizon`, in which case time() is advanced to the
  // horizon and the configuration is left untouched (exact by
  // memorylessness of the exponential clocks).
  EventRecord step(EventStream& stream,
                   double horizon = std::numeric_limits<double>::infinity());

  std::vector<Site> occupied_sites() const;

  // used by run_until when an absorbed state waits out a time horizon
  void advance_time_to(double t) {
    if (t > time_) time_ = t;
  }

  // full rebuild of the discordant multiset compared against the
  // incrementally maintained one; used by tests and debug runs
  bool check_discordant_consistency() const;

 private:
  // rate classes by (source type, degree-4); per-pair rate = rate(type)/deg
  static constexpr int kDegSlots = 3;
  LatticeGeometry geom_;
  double beta_;
  std::unordered_set<uint64_t, SiteHash> occupied_;
  PairSet classes_[2][kDegSlots];
  double time_ = 0.0;
  uint64_t event_count_ = 0;
  int32_t max_abs_x_ = 0;

  double class_rate(int type, int slot) const;
  void flip(const Site& y, bool to_one);
  void insert_pair(const Site& src, uint8_t dir, bool src_type);
  void erase_pair(const Site& src, uint8_t dir, bool src_type);
};

struct StopCondition {
  bool extinct = false;
  std::optional<uint64_t> size_reached;   // |xi_t| >= M
  std::optional<int32_t> plane_hit;      // first type-1 site with |x| >= R
  std::optional<double> time_reached;

  bool any() const { return extinct || size_reached || plane_hit || time_reached; }
};

enum class Outcome {
  Extinct,
  SizeReached,
  PlaneHit,
  TimeReached,
  Fixated,  // finite window fully type-1 (absorbed without extinction)
};

const char* outcome_name(Outcome o);

struct RunResult {
  Outcome outcome = Outcome::Extinct;
  double final_time = 0.0;
  uint64_t final_size = 0;
  int32_t max_abs_x = 0;
  uint64_t events = 0;
};

// Repeatedly applies step() until a stop condition fires; deterministic
// given (initial state, stop, stream).  Conditions are evaluated after each
// event, in the order Extinct, SizeReached, PlaneHit.  On an unbounded
// window at least one of TimeReached/SizeReached must be supplied.
RunResult run_until(BvmState& state, const StopCondition& stop, EventStream& stream);

}  // namespace sv
