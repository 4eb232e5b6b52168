#pragma once

// Tree multisets and the disentangling machinery: restriction of multisets,
// the disentangling predicate, exact minimum-witness search, upper-bound
// checks, the leaf-rooting reduction, and exhaustive per-n extremal values.

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "tangle/combinatorics.hpp"
#include "tangle/enumerate.hpp"
#include "tangle/newick.hpp"
#include "tangle/parallel.hpp"
#include "tangle/tree.hpp"

namespace tangle {

// 3*(floor(log2 r) + 1): the cardinality bound attached to list length r.
inline std::size_t g_bound(std::size_t r) {
  detail::require(r >= 1, "list length must be positive");
  std::size_t log2r = 0;
  while ((r >> (log2r + 1)) != 0) ++log2r;
  return 3 * (log2r + 1);
}

template <class Topo>
struct TopologyTraits;

template <>
struct TopologyTraits<RootedTopology> {
  static constexpr bool rooted = true;
  // Restrictions below this size are identical for all trees on a leaf set.
  static constexpr std::size_t informative_cutoff = 3;
  static RootedTopology restrict(const RootedTopology& t, const LeafSet& k) {
    return restrict_rooted(t, k);
  }
};

template <>
struct TopologyTraits<UnrootedTopology> {
  static constexpr bool rooted = false;
  static constexpr std::size_t informative_cutoff = 4;
  static UnrootedTopology restrict(const UnrootedTopology& t, const LeafSet& k) {
    return restrict_unrooted(t, k);
  }
};

// Unordered length-r list of topologies on one shared leaf set, stored sorted
// by canonical encoding so equality is plain list comparison.
template <class Topo>
class TreeMultiset {
 public:
  TreeMultiset() = default;

  explicit TreeMultiset(std::vector<Topo> members) {
    detail::require(!members.empty(), "a tree multiset cannot be empty");
    leaves_ = members.front().leaves();
    for (const Topo& t : members)
      detail::require(t.leaves() == leaves_, "trees in a multiset must share one leaf set");
    std::sort(members.begin(), members.end());
    members_ = std::move(members);
  }

  std::size_t size() const { return members_.size(); }
  const LeafSet& leaves() const { return leaves_; }
  const std::vector<Topo>& members() const { return members_; }

  friend bool operator==(const TreeMultiset&, const TreeMultiset&) = default;

 private:
  LeafSet leaves_;
  std::vector<Topo> members_;
};

using RootedMultiset = TreeMultiset<RootedTopology>;
using UnrootedMultiset = TreeMultiset<UnrootedTopology>;

template <class Topo>
TreeMultiset<Topo> restrict_multiset(const TreeMultiset<Topo>& s, const LeafSet& k) {
  std::vector<Topo> out;
  out.reserve(s.size());
  for (const Topo& t : s.members()) out.push_back(TopologyTraits<Topo>::restrict(t, k));
  return TreeMultiset<Topo>(std::move(out));
}

// True iff the restrictions of the two multisets to k differ. Sizes below the
// informative cutoff restrict every tree identically, so they never do.
template <class Topo>
bool disentangles(const LeafSet& k, const TreeMultiset<Topo>& s1, const TreeMultiset<Topo>& s2) {
  detail::require(s1.leaves() == s2.leaves(), "multisets must share a leaf set");
  detail::require(s1.size() == s2.size(), "multisets must have the same length");
  detail::require(leaf_set_subset(k, s1.leaves()), "k must be a subset of the leaves");
  if (k.size() < TopologyTraits<Topo>::informative_cutoff) return false;
  return restrict_multiset(s1, k) != restrict_multiset(s2, k);
}

struct DisentangleResult {
  std::size_t cardinality = 0;
  LeafSet witness;  // lexicographically least subset of minimum size
};

// Exact minimum disentangling set: subsets by increasing cardinality starting
// at the informative cutoff, lexicographic within a cardinality, first hit.
template <class Topo>
DisentangleResult min_disentangling(const TreeMultiset<Topo>& s1, const TreeMultiset<Topo>& s2,
                                    unsigned threads = 1) {
  detail::require(s1.leaves() == s2.leaves(), "multisets must share a leaf set");
  detail::require(s1.size() == s2.size(), "multisets must have the same length");
  detail::require(!(s1 == s2), "equal multisets have no disentangling set");
  const LeafSet& all = s1.leaves();
  for (std::size_t m = TopologyTraits<Topo>::informative_cutoff; m <= all.size(); ++m) {
    std::vector<LeafSet> subsets = combinations(all, m);
    auto hit = first_hit(subsets.size(), threads,
                         [&](std::size_t i) { return disentangles(subsets[i], s1, s2); });
    if (hit) return {m, subsets[*hit]};
  }
  throw std::logic_error("distinct multisets must differ on the full leaf set");
}

template <class Topo>
std::vector<std::string> serialize_multiset(const TreeMultiset<Topo>& s,
                                            const LabelTable* table = nullptr) {
  std::vector<std::string> out;
  out.reserve(s.size());
  for (const Topo& t : s.members()) out.push_back(emit_newick(t, table));
  return out;
}

struct BoundCheckReport {
  bool rooted = true;
  std::size_t r = 0;
  std::size_t n = 0;
  std::size_t bound = 0;  // g(r) rooted, g(r)+1 unrooted
  DisentangleResult result;
  bool ok = false;
  long long margin = 0;  // bound - cardinality
  // Serialized pair, filled only when the bound fails.
  std::vector<std::string> counterexample_s1;
  std::vector<std::string> counterexample_s2;
};

// Measures a distinct pair against the logarithmic cardinality bound.
template <class Topo>
BoundCheckReport check_upper_bound(const TreeMultiset<Topo>& s1, const TreeMultiset<Topo>& s2,
                                   unsigned threads = 1) {
  BoundCheckReport rep;
  rep.rooted = TopologyTraits<Topo>::rooted;
  rep.r = s1.size();
  rep.n = s1.leaves().size();
  rep.bound = g_bound(rep.r) + (rep.rooted ? 0 : 1);
  rep.result = min_disentangling(s1, s2, threads);
  rep.ok = rep.result.cardinality <= rep.bound;
  rep.margin = static_cast<long long>(rep.bound) - static_cast<long long>(rep.result.cardinality);
  if (!rep.ok) {
    rep.counterexample_s1 = serialize_multiset(s1);
    rep.counterexample_s2 = serialize_multiset(s2);
  }
  return rep;
}

struct RootingReductionReport {
  Leaf leaf0 = -1;
  bool vacuous = false;            // the two multisets were equal
  bool distinction_lost = false;   // rooted images coincide though inputs differ
  std::size_t subsets_checked = 0;
  std::size_t rooted_hits = 0;     // subsets that disentangle the rooted pair
  std::size_t failures = 0;        // rooted hits whose lift does not disentangle
  std::optional<LeafSet> first_failure;
  bool ok = false;
};

// Roots every member at leaf0 and verifies, over all subsets K of the
// remaining leaves, that a K disentangling the rooted pair lifts to
// {leaf0} + K disentangling the unrooted pair.
inline RootingReductionReport rooting_reduction_check(const UnrootedMultiset& s1,
                                                      const UnrootedMultiset& s2, Leaf leaf0) {
  detail::require(s1.leaves() == s2.leaves(), "multisets must share a leaf set");
  detail::require(s1.size() == s2.size(), "multisets must have the same length");
  detail::require(leaf_set_contains(s1.leaves(), leaf0), "rooting leaf is missing");
  RootingReductionReport rep;
  rep.leaf0 = leaf0;
  if (s1 == s2) {
    rep.vacuous = true;
    rep.ok = true;
    return rep;
  }
  std::vector<RootedTopology> r1, r2;
  for (const UnrootedTopology& t : s1.members()) r1.push_back(root_at_leaf(t, leaf0));
  for (const UnrootedTopology& t : s2.members()) r2.push_back(root_at_leaf(t, leaf0));
  RootedMultiset t1{std::move(r1)}, t2{std::move(r2)};
  rep.distinction_lost = (t1 == t2);
  if (rep.distinction_lost) {
    rep.ok = true;
    return rep;
  }
  LeafSet rest;
  for (Leaf x : s1.leaves())
    if (x != leaf0) rest.push_back(x);
  for (std::size_t m = 3; m <= rest.size(); ++m) {
    for (const LeafSet& k : combinations(rest, m)) {
      ++rep.subsets_checked;
      if (!disentangles(k, t1, t2)) continue;
      ++rep.rooted_hits;
      LeafSet lifted = k;
      lifted.insert(std::lower_bound(lifted.begin(), lifted.end(), leaf0), leaf0);
      if (!disentangles(lifted, s1, s2)) {
        ++rep.failures;
        if (!rep.first_failure) rep.first_failure = k;
      }
    }
  }
  rep.ok = rep.failures == 0;
  return rep;
}

namespace detail {

template <class Topo>
std::size_t exact_extremal(const std::vector<Topo>& trees, std::size_t r, unsigned threads) {
  const std::uint64_t m_r =
      binomial_capped(static_cast<std::uint64_t>(trees.size()) + r - 1, r);
  require(m_r <= 100'000ULL, "exact search beyond the feasibility guard");
  const std::uint64_t pairs = m_r * (m_r - 1) / 2;
  require(pairs <= 10'000'000ULL, "exact search beyond the feasibility guard");
  std::vector<TreeMultiset<Topo>> multisets;
  multisets.reserve(static_cast<std::size_t>(m_r));
  for_each_multiset_index(trees.size(), r, [&](const std::vector<std::size_t>& idx) {
    std::vector<Topo> members;
    members.reserve(r);
    for (std::size_t i : idx) members.push_back(trees[i]);
    multisets.emplace_back(std::move(members));
  });
  require(multisets.size() >= 2, "need at least two multisets");
  std::size_t best = 0;
  for (std::size_t i = 0; i < multisets.size(); ++i)
    for (std::size_t j = i + 1; j < multisets.size(); ++j) {
      DisentangleResult d = min_disentangling(multisets[i], multisets[j], threads);
      if (d.cardinality > best) best = d.cardinality;
    }
  return best;
}

}  // namespace detail

// Max over all pairs of distinct rooted r-multisets on {1..n} of the minimum
// disentangling cardinality. Exhaustive, so guarded.
inline std::size_t exact_rd(std::size_t n, std::size_t r, unsigned threads = 1) {
  detail::require(r >= 1, "list length must be positive");
  return detail::exact_extremal(enumerate_rooted(n), r, threads);
}

// Unrooted counterpart of exact_rd.
inline std::size_t exact_d(std::size_t n, std::size_t r, unsigned threads = 1) {
  detail::require(r >= 1, "list length must be positive");
  detail::require(n >= 4, "unrooted pairs need at least four leaves");
  return detail::exact_extremal(enumerate_unrooted(n), r, threads);
}

// ---------------------------------------------------------------------------
// Multiset file format: one Newick per line, shared leaf set, blank lines and
// '#' comments ignored. Label interning spans all lines handed in together.

namespace detail {

inline std::vector<std::string> multiset_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t i = line.find_first_not_of(" \t");
    if (i == std::string::npos || line[i] == '#') continue;
    lines.push_back(line);
  }
  return lines;
}

inline std::vector<NewickAst> multiset_asts(const std::string& text,
                                            std::vector<std::string>& labels) {
  std::vector<NewickAst> asts;
  for (const std::string& line : multiset_lines(text)) {
    NewickAst ast = parse_newick_ast(line);
    check_duplicates(ast);
    collect_labels(ast, labels);
    asts.push_back(std::move(ast));
  }
  require(!asts.empty(), "multiset file has no trees");
  return asts;
}

template <class Topo>
Topo topo_from_ast(const NewickAst&, const LabelTable&);

template <>
inline RootedTopology topo_from_ast<RootedTopology>(const NewickAst& ast,
                                                    const LabelTable& table) {
  if (ast.is_leaf()) throw ParseError("rooted trees need at least two leaves", ast.pos);
  return rooted_from_ast(ast, table);
}

template <>
inline UnrootedTopology topo_from_ast<UnrootedTopology>(const NewickAst& ast,
                                                        const LabelTable& table) {
  return unrooted_from_ast(ast, table);
}

template <class Topo>
TreeMultiset<Topo> multiset_from_asts(const std::vector<NewickAst>& asts,
                                      const LabelTable& table) {
  std::vector<Topo> members;
  members.reserve(asts.size());
  for (const NewickAst& ast : asts) members.push_back(topo_from_ast<Topo>(ast, table));
  return TreeMultiset<Topo>(std::move(members));
}

template <class Topo>
std::pair<TreeMultiset<Topo>, LabelTable> read_multiset_impl(const std::string& text) {
  std::vector<std::string> labels;
  std::vector<NewickAst> asts = multiset_asts(text, labels);
  LabelTable table = LabelTable::from_appearance(labels);
  return {multiset_from_asts<Topo>(asts, table), std::move(table)};
}

template <class Topo>
std::tuple<TreeMultiset<Topo>, TreeMultiset<Topo>, LabelTable> read_multiset_pair_impl(
    const std::string& text1, const std::string& text2) {
  std::vector<std::string> labels;
  std::vector<NewickAst> asts1 = multiset_asts(text1, labels);
  std::vector<NewickAst> asts2 = multiset_asts(text2, labels);
  LabelTable table = LabelTable::from_appearance(labels);
  return {multiset_from_asts<Topo>(asts1, table), multiset_from_asts<Topo>(asts2, table),
          std::move(table)};
}

}  // namespace detail

inline std::pair<RootedMultiset, LabelTable> read_rooted_multiset(const std::string& text) {
  return detail::read_multiset_impl<RootedTopology>(text);
}

inline std::pair<UnrootedMultiset, LabelTable> read_unrooted_multiset(const std::string& text) {
  return detail::read_multiset_impl<UnrootedTopology>(text);
}

// Joint interning across the two texts keeps labels comparable between files.
inline std::tuple<RootedMultiset, RootedMultiset, LabelTable> read_rooted_multiset_pair(
    const std::string& text1, const std::string& text2) {
  return detail::read_multiset_pair_impl<RootedTopology>(text1, text2);
}

inline std::tuple<UnrootedMultiset, UnrootedMultiset, LabelTable> read_unrooted_multiset_pair(
    const std::string& text1, const std::string& text2) {
  return detail::read_multiset_pair_impl<UnrootedTopology>(text1, text2);
}

template <class Topo>
std::string write_multiset_text(const TreeMultiset<Topo>& s, const LabelTable* table = nullptr) {
  std::string out;
  for (const Topo& t : s.members()) {
    out += emit_newick(t, table);
    out += '\n';
  }
  return out;
}

}  // namespace tangle
