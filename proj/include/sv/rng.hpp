#pragma once

#include <cstdint>

namespace sv {

// Splittable counter-based random stream (SplitMix64 family).
//
// The state advances by a per-stream odd increment ("gamma") derived from
// (seed, stream_id), and each output is a strong 64-bit mix of the state.
// The raw u64 sequence is pure integer arithmetic and therefore identical
// on every platform; real-valued draws go through libm (log/sqrt) and are
// identical for a given libm build.
//
// Replicates, coupled runs and worker threads each get their own stream_id,
// so parallel schedules never change the numbers a replicate sees.
class EventStream {
 public:
  EventStream() : EventStream(0, 0) {}
  EventStream(uint64_t seed, uint64_t stream_id);

  uint64_t seed() const { return seed_; }
  uint64_t stream_id() const { return stream_id_; }
  uint64_t cursor() const { return cursor_; }

  uint64_t next_u64() {
    ++cursor_;
    state_ += gamma_;
    return mix64(state_);
  }

  // uniform double in [0, 1), 53 random bits
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform integer in [0, n), n >= 1; unbiased (Lemire's method)
  uint64_t next_below(uint64_t n) {
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
    auto lo = static_cast<uint64_t>(m);
    if (lo < n) {
      const uint64_t threshold = (0 - n) % n;  // 2^64 mod n
      while (lo < threshold) {
        m = static_cast<unsigned __int128>(next_u64()) * n;
        lo = static_cast<uint64_t>(m);
      }
    }
    return static_cast<uint64_t>(m >> 64);
  }

  double next_exp(double rate);          // Exp(rate), rate > 0
  double next_normal();                  // N(0,1), polar method
  double next_gamma(double shape);       // Gamma(shape, 1), shape >= 1
  uint64_t next_poisson(double mean);    // mean >= 0

  static uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  uint64_t seed_ = 0;
  uint64_t stream_id_ = 0;
  uint64_t state_ = 0;
  uint64_t gamma_ = 0;
  uint64_t cursor_ = 0;
};

}  // namespace sv
