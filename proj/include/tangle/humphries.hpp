#pragma once

// Parity-split family pairs: each leaf i of a k-leaf base tree is replaced by
// a 3-leaf gadget in one of two orientations, and the 2^k resulting trees are
// split by orientation parity. The two halves agree on every proper leaf
// subset yet differ as multisets, which pins the lower bound 3k.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tangle/combinatorics.hpp"
#include "tangle/disentangle.hpp"
#include "tangle/newick.hpp"
#include "tangle/parallel.hpp"
#include "tangle/tree.hpp"

namespace tangle {

// Gadget leaves of block i (1-based): a_i, b_i, c_i = 3(i-1), 3(i-1)+1, 3(i-1)+2.
inline Leaf gadget_leaf_a(std::size_t i) { return static_cast<Leaf>(3 * (i - 1)); }
inline Leaf gadget_leaf_b(std::size_t i) { return static_cast<Leaf>(3 * (i - 1) + 1); }
inline Leaf gadget_leaf_c(std::size_t i) { return static_cast<Leaf>(3 * (i - 1) + 2); }

// bit 0: a_i | b_i c_i; bit 1: b_i | a_i c_i.
inline RootedTopology gadget_tree(std::size_t i, int bit) {
  detail::require(i >= 1, "gadget blocks are numbered from one");
  detail::require(bit == 0 || bit == 1, "gadget orientation is a bit");
  const Leaf a = gadget_leaf_a(i), b = gadget_leaf_b(i), c = gadget_leaf_c(i);
  const TripletChoice choice = bit == 0 ? TripletChoice(a, b, c) : TripletChoice(b, a, c);
  return choice.tree();
}

// ((..((1,2),3)..,k) on {1,...,k}; the default base shape.
inline RootedTopology caterpillar_tree(std::size_t k) {
  detail::require(k >= 1, "caterpillar needs at least one leaf");
  RootedTopology t = RootedTopology::leaf(1);
  for (std::size_t i = 2; i <= k; ++i)
    t = RootedTopology::join(t, RootedTopology::leaf(static_cast<Leaf>(i)));
  return t;
}

namespace detail {

inline Enc substitute_gadgets(const Enc& enc, std::size_t& pos, const std::vector<int>& eps) {
  const std::int32_t v = enc[pos];
  if (v != k_node) {
    ++pos;
    return gadget_tree(static_cast<std::size_t>(v), eps[static_cast<std::size_t>(v) - 1])
        .encoding();
  }
  ++pos;
  Enc l = substitute_gadgets(enc, pos, eps);
  Enc r = substitute_gadgets(enc, pos, eps);
  // Gadget minima grow with the block index, so child order is preserved.
  Enc out;
  out.reserve(1 + l.size() + r.size());
  out.push_back(k_node);
  if (min_leaf_at(l, 0) < min_leaf_at(r, 0)) {
    out.insert(out.end(), l.begin(), l.end());
    out.insert(out.end(), r.begin(), r.end());
  } else {
    out.insert(out.end(), r.begin(), r.end());
    out.insert(out.end(), l.begin(), l.end());
  }
  return out;
}

}  // namespace detail

// Replace leaf i of the base tree by gadget i oriented by eps[i-1].
inline RootedTopology build_tree_epsilon(const RootedTopology& base, const std::vector<int>& eps) {
  const std::size_t k = base.leaf_count();
  detail::require(eps.size() == k, "one orientation bit per base leaf");
  LeafSet expected(k);
  for (std::size_t i = 0; i < k; ++i) expected[i] = static_cast<Leaf>(i + 1);
  detail::require(base.leaves() == expected, "base tree must live on {1..k}");
  for (int b : eps) detail::require(b == 0 || b == 1, "orientation entries are bits");
  std::size_t pos = 0;
  return detail::TopologyAccess::adopt(detail::substitute_gadgets(base.encoding(), pos, eps));
}

struct FamilyPair {
  std::size_t k = 0;
  RootedTopology base;
  RootedMultiset odd;   // orientation parity 1
  RootedMultiset even;  // orientation parity 0
};

// All 2^k orientation vectors, split by parity into two 2^(k-1) families.
inline FamilyPair build_family_pair(std::size_t k,
                                    std::optional<RootedTopology> base = std::nullopt) {
  detail::require(k >= 1 && k <= 16, "family construction supports 1..16 blocks");
  FamilyPair fam;
  fam.k = k;
  fam.base = base ? std::move(*base) : caterpillar_tree(k);
  std::vector<RootedTopology> odd, even;
  for (std::uint64_t mask = 0; mask < (1ULL << k); ++mask) {
    std::vector<int> eps(k);
    int parity = 0;
    for (std::size_t i = 0; i < k; ++i) {
      eps[i] = static_cast<int>((mask >> i) & 1);
      parity ^= eps[i];
    }
    (parity ? odd : even).push_back(build_tree_epsilon(fam.base, eps));
  }
  fam.odd = RootedMultiset(std::move(odd));
  fam.even = RootedMultiset(std::move(even));
  return fam;
}

// Pad both families with r - 2^(k-1) copies of a filler tree on the same
// leaves; defaults to the all-zero orientation tree.
inline std::pair<RootedMultiset, RootedMultiset> pad_family_pair(
    const FamilyPair& fam, std::size_t r, std::optional<RootedTopology> filler = std::nullopt) {
  const std::size_t half = 1ULL << (fam.k - 1);
  detail::require(r >= half && r < 2 * half, "r must lie in [2^(k-1), 2^k)");
  RootedTopology fill =
      filler ? std::move(*filler) : build_tree_epsilon(fam.base, std::vector<int>(fam.k, 0));
  detail::require(fill.leaves() == fam.odd.leaves(), "filler must share the family leaf set");
  std::vector<RootedTopology> s1 = fam.odd.members();
  std::vector<RootedTopology> s2 = fam.even.members();
  for (std::size_t i = half; i < r; ++i) {
    s1.push_back(fill);
    s2.push_back(fill);
  }
  return {RootedMultiset(std::move(s1)), RootedMultiset(std::move(s2))};
}

// True iff the two multisets restrict identically to every m-subset of their
// leaves (and so, by functoriality, to every smaller subset).
template <class Topo>
bool verify_entangled(const TreeMultiset<Topo>& s1, const TreeMultiset<Topo>& s2, std::size_t m,
                      unsigned threads = 1) {
  detail::require(s1.leaves() == s2.leaves(), "multisets must share a leaf set");
  detail::require(s1.size() == s2.size(), "multisets must have the same length");
  detail::require(m <= s1.leaves().size(), "subset size exceeds the leaf count");
  if (m < TopologyTraits<Topo>::informative_cutoff) return true;
  std::vector<LeafSet> subsets = combinations(s1.leaves(), m);
  auto hit = first_hit(subsets.size(), threads,
                       [&](std::size_t i) { return disentangles(subsets[i], s1, s2); });
  return !hit.has_value();
}

// "a1","b1","c1",...,"ak","bk","ck" in id order; interning them in this
// order reproduces the gadget leaf ids exactly.
inline std::vector<std::string> gadget_leaf_names(std::size_t k) {
  std::vector<std::string> names;
  names.reserve(3 * k);
  for (std::size_t i = 1; i <= k; ++i) {
    names.push_back("a" + std::to_string(i));
    names.push_back("b" + std::to_string(i));
    names.push_back("c" + std::to_string(i));
  }
  return names;
}

inline LabelTable gadget_label_table(std::size_t k) {
  return LabelTable::from_appearance(gadget_leaf_names(k));
}

}  // namespace tangle
