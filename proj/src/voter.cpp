#include "sv/voter.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sv {

BvmState::BvmState(const LatticeGeometry& geom, double beta, const std::vector<Site>& initial)
    : geom_(geom), beta_(beta) {
  if (beta < 0.0) throw std::domain_error("BvmState: beta must be >= 0");
  occupied_.reserve(initial.size() * 2 + 16);
  for (const Site& raw : initial) {
    const Site s = geom_.canonical(raw);
    if (!occupied_.insert(pack_site(s)).second) continue;
    const int32_t ax = std::abs(geom_.centered(s.x));
    if (ax > max_abs_x_) max_abs_x_ = ax;
  }
  // every mixed edge is seen exactly once from its type-1 end
  for (const uint64_t key : occupied_) {
    const Site s = unpack_site(key);
    const NeighborList nb = geom_.neighbors(s);
    for (int i = 0; i < nb.count; ++i) {
      const Site& n = nb.site[i];
      if (occupied_.count(pack_site(n))) continue;
      insert_pair(s, nb.dir[i], true);
      insert_pair(n, geom_.reverse_dir(nb.dir[i]), false);
    }
  }
}

double BvmState::class_rate(int type, int slot) const {
  const double r = type == 1 ? 1.0 + beta_ : 1.0;
  return r / static_cast<double>(slot + 4);
}

uint64_t BvmState::discordant_count() const {
  uint64_t n = 0;
  for (int t = 0; t < 2; ++t)
    for (int s = 0; s < kDegSlots; ++s) n += classes_[t][s].size();
  return n;
}

double BvmState::total_rate() const {
  double total = 0.0;
  for (int t = 0; t < 2; ++t)
    for (int s = 0; s < kDegSlots; ++s)
      total += static_cast<double>(classes_[t][s].size()) * class_rate(t, s);
  return total;
}

void BvmState::insert_pair(const Site& src, uint8_t dir, bool src_type) {
  classes_[src_type ? 1 : 0][geom_.degree(src) - 4].insert(pack_site(src) * 8 + dir);
}

void BvmState::erase_pair(const Site& src, uint8_t dir, bool src_type) {
  classes_[src_type ? 1 : 0][geom_.degree(src) - 4].erase(pack_site(src) * 8 + dir);
}

void BvmState::flip(const Site& y, bool to_one) {
  const uint64_t ykey = pack_site(y);
  const bool was_one = occupied_.count(ykey) != 0;
  if (was_one == to_one) return;

  // re-evaluate the <= 12 ordered pairs incident to y
  const NeighborList nb = geom_.neighbors(y);
  for (int i = 0; i < nb.count; ++i) {
    const Site& z = nb.site[i];
    const bool z_one = occupied_.count(pack_site(z)) != 0;
    const uint8_t d_yz = nb.dir[i];
    const uint8_t d_zy = geom_.reverse_dir(d_yz);
    const bool old_disc = (was_one != z_one);
    const bool new_disc = (to_one != z_one);
    if (old_disc) {
      erase_pair(y, d_yz, was_one);
      erase_pair(z, d_zy, z_one);
    }
    if (new_disc) {
      insert_pair(y, d_yz, to_one);
      insert_pair(z, d_zy, z_one);
    }
  }
  if (to_one) {
    occupied_.insert(ykey);
    const int32_t ax = std::abs(geom_.centered(y.x));
    if (ax > max_abs_x_) max_abs_x_ = ax;
  } else {
    occupied_.erase(ykey);
  }
}

EventRecord BvmState::step(EventStream& stream, double horizon) {
  EventRecord rec;
  const double total = total_rate();
  if (total <= 0.0) return rec;  // absorbed

  rec.dt = stream.next_exp(total);
  if (time_ + rec.dt > horizon) {
    time_ = horizon;
    rec.dt = 0.0;
    return rec;  // fired == false, configuration unchanged
  }
  time_ += rec.dt;
  ++event_count_;

  // pick a class proportional to count * per-pair rate, then a uniform member
  double r = stream.next_unit() * total;
  int ct = 1, cs = 0;
  for (int t = 0; t < 2; ++t) {
    for (int s = 0; s < kDegSlots; ++s) {
      const double block = static_cast<double>(classes_[t][s].size()) * class_rate(t, s);
      if (r < block) {
        ct = t;
        cs = s;
        goto picked;
      }
      r -= block;
    }
  }
  // floating-point edge: fall back to the last nonempty class
  for (int t = 1; t >= 0; --t)
    for (int s = kDegSlots - 1; s >= 0; --s)
      if (classes_[t][s].size()) { ct = t; cs = s; goto picked; }
picked:
  const PairSet& cls = classes_[ct][cs];
  const uint64_t key = cls.select(stream.next_below(cls.size()));
  rec.source = unpack_site(key / 8);
  rec.target = geom_.neighbor(rec.source, static_cast<uint8_t>(key % 8));
  rec.target_became_one = (ct == 1);
  rec.fired = true;
  flip(rec.target, rec.target_became_one);
  return rec;
}

std::vector<Site> BvmState::occupied_sites() const {
  std::vector<Site> out;
  out.reserve(occupied_.size());
  for (const uint64_t k : occupied_) out.push_back(unpack_site(k));
  return out;
}

bool BvmState::check_discordant_consistency() const {
  uint64_t expect = 0;
  for (const uint64_t key : occupied_) {
    const Site s = unpack_site(key);
    const NeighborList nb = geom_.neighbors(s);
    for (int i = 0; i < nb.count; ++i) {
      const Site& n = nb.site[i];
      if (occupied_.count(pack_site(n))) continue;
      ++expect;
      if (!classes_[1][geom_.degree(s) - 4].contains(pack_site(s) * 8 + nb.dir[i])) return false;
      const uint8_t rd = geom_.reverse_dir(nb.dir[i]);
      if (!classes_[0][geom_.degree(n) - 4].contains(pack_site(n) * 8 + rd)) return false;
    }
  }
  return discordant_count() == 2 * expect;
}

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Extinct: return "extinct";
    case Outcome::SizeReached: return "size_reached";
    case Outcome::PlaneHit: return "plane_hit";
    case Outcome::TimeReached: return "time_reached";
    case Outcome::Fixated: return "fixated";
  }
  return "?";
}

RunResult run_until(BvmState& state, const StopCondition& stop, EventStream& stream) {
  if (!stop.any()) throw std::invalid_argument("run_until: no stop condition supplied");
  if (!state.geometry().bounded() && !stop.time_reached && !stop.size_reached)
    throw std::invalid_argument(
        "run_until: unbounded window requires a TimeReached or SizeReached condition");

  RunResult res;
  const bool has_T = stop.time_reached.has_value();
  const double T = has_T ? *stop.time_reached : std::numeric_limits<double>::infinity();
  for (;;) {
    if (state.absorbed()) {
      // frozen configuration: a supplied TimeReached still fires at T,
      // otherwise report the absorbing state itself
      if (state.size() == 0 && stop.extinct) {
        res.outcome = Outcome::Extinct;
        res.final_time = state.time();
      } else if (has_T) {
        res.outcome = Outcome::TimeReached;
        res.final_time = T;
        state.advance_time_to(T);
      } else {
        res.outcome = state.size() == 0 ? Outcome::Extinct : Outcome::Fixated;
        res.final_time = state.time();
      }
      break;
    }
    const EventRecord ev = state.step(stream, T);
    if (!ev.fired) {  // horizon reached before the next event
      res.outcome = Outcome::TimeReached;
      res.final_time = T;
      break;
    }
    if (state.size() == 0) {
      if (stop.extinct) {
        res.outcome = Outcome::Extinct;
        res.final_time = state.time();
        break;
      }
      continue;  // absorbed branch decides on the next iteration
    }
    if (stop.size_reached && state.size() >= *stop.size_reached) {
      res.outcome = Outcome::SizeReached;
      res.final_time = state.time();
      break;
    }
    if (stop.plane_hit && state.max_abs_x() >= *stop.plane_hit) {
      res.outcome = Outcome::PlaneHit;
      res.final_time = state.time();
      break;
    }
  }
  res.final_size = state.size();
  res.max_abs_x = state.max_abs_x();
  res.events = state.event_count();
  return res;
}

}  // namespace sv
