#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

namespace tangle {

// Smallest index in [0,count) where pred is true, or nullopt. Work proceeds
// in fixed waves so the answer is identical for every thread count.
template <class Pred>
std::optional<std::size_t> first_hit(std::size_t count, unsigned threads, Pred&& pred) {
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i)
      if (pred(i)) return i;
    return std::nullopt;
  }
  const std::size_t chunk = 256;
  const std::size_t wave = chunk * threads;
  for (std::size_t base = 0; base < count; base += wave) {
    const std::size_t end = std::min(count, base + wave);
    std::vector<std::size_t> local(threads, SIZE_MAX);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t lo = std::min(end, base + t * chunk);
      const std::size_t hi = std::min(end, lo + chunk);
      pool.emplace_back([&, t, lo, hi] {
        for (std::size_t i = lo; i < hi; ++i) {
          if (pred(i)) {
            local[t] = i;
            return;
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    std::size_t best = SIZE_MAX;
    for (std::size_t v : local) best = std::min(best, v);
    if (best != SIZE_MAX) return best;
  }
  return std::nullopt;
}

}  // namespace tangle
