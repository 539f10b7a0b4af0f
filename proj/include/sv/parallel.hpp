#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

#include "sv/rng.hpp"

namespace sv {

inline int default_workers() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// Deterministic replicate-parallel map: fn(index, stream) is evaluated for
// every index in [0, n) with stream = EventStream(seed, stream_base + index),
// results stored by index.  Worker count and scheduling never change the
// output values, only the wall time.
template <class R, class Fn>
std::vector<R> parallel_map(uint64_t n, uint64_t seed, uint64_t stream_base, int workers, Fn&& fn) {
  std::vector<R> results(n);
  if (n == 0) return results;
  if (workers < 1) workers = 1;
  if (static_cast<uint64_t>(workers) > n) workers = static_cast<int>(n);
  if (workers == 1) {
    for (uint64_t i = 0; i < n; ++i) {
      EventStream stream(seed, stream_base + i);
      results[i] = fn(i, stream);
    }
    return results;
  }
  std::atomic<uint64_t> next{0};
  const uint64_t chunk = std::max<uint64_t>(1, n / (static_cast<uint64_t>(workers) * 16));
  auto worker = [&]() {
    for (;;) {
      const uint64_t lo = next.fetch_add(chunk);
      if (lo >= n) return;
      const uint64_t hi = std::min(n, lo + chunk);
      for (uint64_t i = lo; i < hi; ++i) {
        EventStream stream(seed, stream_base + i);
        results[i] = fn(i, stream);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return results;
}

}  // namespace sv
