#pragma once

// Exhaustive and random generation of topologies by sequential leaf
// insertion: attaching leaf m+1 to any of the 2m-1 edges (counting a virtual
// edge above the root) of an m-leaf tree yields every (m+1)-leaf rooted
// binary topology exactly once, matching the (2n-3)!! count.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "tangle/tree.hpp"

namespace tangle {

namespace detail {

// Attach `next` above the subtree starting at `pos`: every encoding index
// starts a subtree, so positions enumerate edges. Inserted labels exceed all
// existing ones, which keeps the encoding canonical without reordering.
inline Enc insert_leaf_at(const Enc& enc, std::size_t pos, Leaf next) {
  const std::size_t end = subtree_end(enc, pos);
  Enc out;
  out.reserve(enc.size() + 2);
  out.insert(out.end(), enc.begin(), enc.begin() + static_cast<std::ptrdiff_t>(pos));
  out.push_back(k_node);
  out.insert(out.end(), enc.begin() + static_cast<std::ptrdiff_t>(pos),
             enc.begin() + static_cast<std::ptrdiff_t>(end));
  out.push_back(next);
  out.insert(out.end(), enc.begin() + static_cast<std::ptrdiff_t>(end), enc.end());
  return out;
}

inline void enumerate_rooted_rec(const Enc& enc, const LeafSet& labels, std::size_t used,
                                 std::vector<RootedTopology>& out) {
  if (used == labels.size()) {
    out.push_back(TopologyAccess::adopt(enc));
    return;
  }
  const Leaf next = labels[used];
  for (std::size_t pos = 0; pos < enc.size(); ++pos)
    enumerate_rooted_rec(insert_leaf_at(enc, pos, next), labels, used + 1, out);
}

}  // namespace detail

// All rooted binary topologies on the given (sorted ascending) labels.
inline std::vector<RootedTopology> enumerate_rooted_on(const LeafSet& labels) {
  detail::require(labels.size() >= 2 && labels.size() <= 8,
                  "rooted enumeration supports 2..8 leaves");
  detail::require(std::is_sorted(labels.begin(), labels.end()) &&
                      std::adjacent_find(labels.begin(), labels.end()) == labels.end(),
                  "labels must be sorted and distinct");
  std::vector<RootedTopology> out;
  detail::enumerate_rooted_rec({labels[0]}, labels, 1, out);
  std::sort(out.begin(), out.end());
  return out;
}

// All (2n-3)!! rooted binary topologies on {1,...,n}, canonically ordered.
inline std::vector<RootedTopology> enumerate_rooted(std::size_t n) {
  LeafSet labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<Leaf>(i + 1);
  return enumerate_rooted_on(labels);
}

// All (2n-5)!! trivalent topologies on {1,...,n}: leaf 1 is the canonical
// handle, so these are exactly the rooted topologies on {2,...,n}.
inline std::vector<UnrootedTopology> enumerate_unrooted(std::size_t n) {
  detail::require(n >= 3 && n <= 9, "unrooted enumeration supports 3..9 leaves");
  if (n == 3) {
    RootedTopology cherry =
        RootedTopology::join(RootedTopology::leaf(2), RootedTopology::leaf(3));
    return {UnrootedTopology::from_parts(1, cherry)};
  }
  LeafSet labels(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) labels[i] = static_cast<Leaf>(i + 2);
  std::vector<UnrootedTopology> out;
  for (RootedTopology& t : enumerate_rooted_on(labels))
    out.push_back(UnrootedTopology::from_parts(1, std::move(t)));
  return out;
}

namespace detail {

inline RootedTopology random_rooted_impl(const LeafSet& labels, std::mt19937_64& rng) {
  Enc enc{labels[0]};
  for (std::size_t used = 1; used < labels.size(); ++used) {
    const std::size_t pos = static_cast<std::size_t>(rng() % enc.size());
    enc = insert_leaf_at(enc, pos, labels[used]);
  }
  return TopologyAccess::adopt(std::move(enc));
}

}  // namespace detail

inline RootedTopology random_rooted_on(const LeafSet& labels, std::mt19937_64& rng) {
  detail::require(labels.size() >= 2, "rooted topologies need at least two leaves");
  detail::require(std::is_sorted(labels.begin(), labels.end()) &&
                      std::adjacent_find(labels.begin(), labels.end()) == labels.end(),
                  "labels must be sorted and distinct");
  return detail::random_rooted_impl(labels, rng);
}

// Uniformly random rooted binary topology on {1,...,n}; deterministic per seed.
inline RootedTopology random_rooted(std::size_t n, std::uint64_t seed) {
  detail::require(n >= 2, "rooted topologies need at least two leaves");
  LeafSet labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<Leaf>(i + 1);
  std::mt19937_64 rng(seed);
  return detail::random_rooted_impl(labels, rng);
}

inline UnrootedTopology random_unrooted_on(const LeafSet& labels, std::mt19937_64& rng) {
  detail::require(labels.size() >= 3, "unrooted topologies need at least three leaves");
  LeafSet rest(labels.begin() + 1, labels.end());
  if (rest.size() == 2)
    return UnrootedTopology::from_parts(
        labels[0], RootedTopology::join(RootedTopology::leaf(rest[0]),
                                        RootedTopology::leaf(rest[1])));
  return UnrootedTopology::from_parts(labels[0], detail::random_rooted_impl(rest, rng));
}

// Uniformly random trivalent topology on {1,...,n}; deterministic per seed.
inline UnrootedTopology random_unrooted(std::size_t n, std::uint64_t seed) {
  detail::require(n >= 3, "unrooted topologies need at least three leaves");
  LeafSet labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<Leaf>(i + 1);
  std::mt19937_64 rng(seed);
  return random_unrooted_on(labels, rng);
}

}  // namespace tangle
