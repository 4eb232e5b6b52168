#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tangle/tree.hpp"

namespace tangle {

// Binomial coefficient, saturating at the cap instead of overflowing.
inline std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k,
                                     std::uint64_t cap = UINT64_MAX / 2) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    if (r > cap) return cap;
    r = r * (n - k + i) / i;
  }
  return r < cap ? r : cap;
}

// All m-subsets of a sorted universe, in lexicographic order.
inline std::vector<LeafSet> combinations(const LeafSet& universe, std::size_t m) {
  std::vector<LeafSet> out;
  const std::size_t n = universe.size();
  if (m > n) return out;
  std::vector<std::size_t> idx(m);
  for (std::size_t i = 0; i < m; ++i) idx[i] = i;
  for (;;) {
    LeafSet s(m);
    for (std::size_t i = 0; i < m; ++i) s[i] = universe[idx[i]];
    out.push_back(std::move(s));
    // advance
    std::size_t i = m;
    while (i > 0) {
      --i;
      if (idx[i] != i + n - m) {
        ++idx[i];
        for (std::size_t j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
        break;
      }
      if (i == 0) return out;
    }
    if (m == 0) return out;
  }
}

// Visit every m-multiset of {0,...,n-1} as a nondecreasing index tuple.
template <class Fn>
void for_each_multiset_index(std::size_t n, std::size_t m, Fn&& fn) {
  std::vector<std::size_t> idx(m, 0);
  if (n == 0 && m > 0) return;
  for (;;) {
    fn(std::as_const(idx));
    std::size_t i = m;
    while (i > 0) {
      --i;
      if (idx[i] + 1 < n) {
        ++idx[i];
        for (std::size_t j = i + 1; j < m; ++j) idx[j] = idx[i];
        i = m + 1;
        break;
      }
    }
    if (i == m + 1) continue;
    return;
  }
}

}  // namespace tangle
