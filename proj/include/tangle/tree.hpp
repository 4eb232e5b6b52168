#pragma once

// Leaf-labeled tree topologies: rooted binary and unrooted trivalent trees in
// canonical form, with restriction, rooted-triple / quartet extraction, and
// the leaf-rooting correspondence between the two kinds.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tangle {

using Leaf = std::int32_t;

// Sorted, duplicate-free list of leaf ids.
using LeafSet = std::vector<Leaf>;

namespace detail {

inline void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

constexpr std::int32_t k_node = -1;

// Preorder encoding of a rooted binary shape: k_node opens an internal node
// followed by its two child subtrees, any other value is a leaf id.
// Canonical form: at every internal node the child subtree holding the
// smaller minimum leaf comes first. Equal topologies encode identically.
using Enc = std::vector<std::int32_t>;

inline std::size_t subtree_end(const Enc& enc, std::size_t pos) {
  std::size_t need = 1;
  while (need > 0) {
    if (enc[pos] == k_node) ++need; else --need;
    ++pos;
  }
  return pos;
}

// In canonical form the leftmost leaf of any subtree is its minimum.
inline Leaf min_leaf_at(const Enc& enc, std::size_t pos) {
  while (enc[pos] == k_node) ++pos;
  return enc[pos];
}

struct TopologyAccess;

}  // namespace detail

inline LeafSet make_leaf_set(std::vector<Leaf> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline bool leaf_set_contains(const LeafSet& s, Leaf x) {
  return std::binary_search(s.begin(), s.end(), x);
}

inline bool leaf_set_subset(const LeafSet& sub, const LeafSet& super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

namespace detail {

inline void require_leaf_set(const LeafSet& s, const char* what) {
  require(std::is_sorted(s.begin(), s.end()) &&
              std::adjacent_find(s.begin(), s.end()) == s.end(),
          what);
}

}  // namespace detail

// Rooted binary leaf-labeled tree, stored canonically. A single leaf is a
// valid (degenerate) topology; restriction can produce it.
class RootedTopology {
 public:
  RootedTopology() = default;

  static RootedTopology leaf(Leaf id) {
    detail::require(id >= 0, "leaf ids must be nonnegative");
    RootedTopology t;
    t.enc_ = {id};
    return t;
  }

  // Canonical parent of two subtrees on disjoint leaf sets.
  static RootedTopology join(const RootedTopology& a, const RootedTopology& b) {
    detail::require(!a.empty() && !b.empty(), "join needs two topologies");
    const RootedTopology* lo = &a;
    const RootedTopology* hi = &b;
    if (b.min_leaf() < a.min_leaf()) std::swap(lo, hi);
    RootedTopology t;
    t.enc_.reserve(1 + a.enc_.size() + b.enc_.size());
    t.enc_.push_back(detail::k_node);
    t.enc_.insert(t.enc_.end(), lo->enc_.begin(), lo->enc_.end());
    t.enc_.insert(t.enc_.end(), hi->enc_.begin(), hi->enc_.end());
    return t;
  }

  bool empty() const { return enc_.empty(); }
  bool is_leaf() const { return enc_.size() == 1; }
  std::size_t leaf_count() const { return (enc_.size() + 1) / 2; }

  Leaf min_leaf() const {
    detail::require(!empty(), "empty topology has no leaves");
    return detail::min_leaf_at(enc_, 0);
  }

  LeafSet leaves() const {
    std::vector<Leaf> out;
    out.reserve(leaf_count());
    for (std::int32_t v : enc_)
      if (v != detail::k_node) out.push_back(v);
    return make_leaf_set(std::move(out));
  }

  bool has_leaf(Leaf x) const {
    return std::find(enc_.begin(), enc_.end(), x) != enc_.end() && x >= 0;
  }

  // Child subtrees of the root; valid only for internal roots.
  std::pair<RootedTopology, RootedTopology> children() const {
    detail::require(!empty() && !is_leaf(), "a leaf has no children");
    std::size_t mid = detail::subtree_end(enc_, 1);
    RootedTopology l, r;
    l.enc_.assign(enc_.begin() + 1, enc_.begin() + static_cast<std::ptrdiff_t>(mid));
    r.enc_.assign(enc_.begin() + static_cast<std::ptrdiff_t>(mid), enc_.end());
    return {std::move(l), std::move(r)};
  }

  const detail::Enc& encoding() const { return enc_; }

  friend bool operator==(const RootedTopology&, const RootedTopology&) = default;
  friend auto operator<=>(const RootedTopology& a, const RootedTopology& b) {
    return std::lexicographical_compare_three_way(a.enc_.begin(), a.enc_.end(),
                                                  b.enc_.begin(), b.enc_.end());
  }

 private:
  detail::Enc enc_;
  friend struct detail::TopologyAccess;
};

// Unrooted trivalent leaf-labeled tree with >= 3 leaves. Canonical storage:
// the smallest leaf becomes a handle and the remainder is kept as the rooted
// tree obtained by deleting that leaf and rooting at its former neighbor.
class UnrootedTopology {
 public:
  UnrootedTopology() = default;

  static UnrootedTopology from_parts(Leaf handle, RootedTopology rest) {
    detail::require(rest.leaf_count() >= 2, "unrooted trees need at least three leaves");
    detail::require(handle >= 0 && handle < rest.min_leaf(),
                    "handle must be the smallest leaf");
    UnrootedTopology u;
    u.handle_ = handle;
    u.rest_ = std::move(rest);
    return u;
  }

  bool empty() const { return rest_.empty(); }
  Leaf handle() const { return handle_; }
  const RootedTopology& rest() const { return rest_; }
  std::size_t leaf_count() const { return 1 + rest_.leaf_count(); }

  LeafSet leaves() const {
    LeafSet out = rest_.leaves();
    out.insert(out.begin(), handle_);
    return out;
  }

  bool has_leaf(Leaf x) const { return x == handle_ || rest_.has_leaf(x); }

  friend bool operator==(const UnrootedTopology&, const UnrootedTopology&) = default;
  friend auto operator<=>(const UnrootedTopology& a, const UnrootedTopology& b) {
    if (auto c = a.handle_ <=> b.handle_; c != 0) return c;
    return a.rest_ <=> b.rest_;
  }

 private:
  Leaf handle_ = -1;
  RootedTopology rest_;
};

namespace detail {

struct TopologyAccess {
  static RootedTopology adopt(Enc enc) {
    RootedTopology t;
    t.enc_ = std::move(enc);
    return t;
  }
};

}  // namespace detail

// One of the three resolved rooted shapes on a 3-set: apex | cherry.
struct TripletChoice {
  Leaf apex = -1;
  Leaf cherry_lo = -1;
  Leaf cherry_hi = -1;

  TripletChoice() = default;
  TripletChoice(Leaf a, Leaf x, Leaf y) : apex(a), cherry_lo(x), cherry_hi(y) {
    if (cherry_lo > cherry_hi) std::swap(cherry_lo, cherry_hi);
    detail::require(apex != cherry_lo && apex != cherry_hi && cherry_lo != cherry_hi,
                    "triplet needs three distinct leaves");
  }

  static TripletChoice read(const RootedTopology& t) {
    detail::require(t.leaf_count() == 3, "not a three-leaf tree");
    const detail::Enc& e = t.encoding();
    // Either (apex,(x,y)) -> [N a N x y] or ((x,y),apex) -> [N N x y a].
    if (e[1] != detail::k_node) return {e[1], e[3], e[4]};
    return {e[4], e[2], e[3]};
  }

  // Position of the apex within the sorted 3-set: 0, 1 or 2.
  int choice_code() const {
    int code = 0;
    if (apex > cherry_lo) ++code;
    if (apex > cherry_hi) ++code;
    return code;
  }

  RootedTopology tree() const {
    return RootedTopology::join(
        RootedTopology::leaf(apex),
        RootedTopology::join(RootedTopology::leaf(cherry_lo), RootedTopology::leaf(cherry_hi)));
  }

  friend bool operator==(const TripletChoice&, const TripletChoice&) = default;
  friend auto operator<=>(const TripletChoice&, const TripletChoice&) = default;
};

// One of the three splits of a 4-set into two pairs.
struct QuartetChoice {
  std::array<Leaf, 2> first{-1, -1};
  std::array<Leaf, 2> second{-1, -1};

  QuartetChoice() = default;
  QuartetChoice(Leaf a, Leaf b, Leaf c, Leaf d) {
    if (a > b) std::swap(a, b);
    if (c > d) std::swap(c, d);
    first = {a, b};
    second = {c, d};
    if (second[0] < first[0]) std::swap(first, second);
    LeafSet all = make_leaf_set({a, b, c, d});
    detail::require(all.size() == 4, "quartet needs four distinct leaves");
  }

  static QuartetChoice read(const UnrootedTopology& t) {
    detail::require(t.leaf_count() == 4, "not a four-leaf tree");
    TripletChoice triple = TripletChoice::read(t.rest());
    // The handle pairs with the apex of the remaining 3-leaf tree.
    return {t.handle(), triple.apex, triple.cherry_lo, triple.cherry_hi};
  }

  friend bool operator==(const QuartetChoice&, const QuartetChoice&) = default;
  friend auto operator<=>(const QuartetChoice&, const QuartetChoice&) = default;
};

namespace detail {

inline std::optional<std::pair<Enc, Leaf>> restrict_rec(const Enc& enc, std::size_t& pos,
                                                        const LeafSet& keep) {
  const std::int32_t v = enc[pos];
  if (v != k_node) {
    ++pos;
    if (leaf_set_contains(keep, v)) return std::make_pair(Enc{v}, v);
    return std::nullopt;
  }
  ++pos;
  auto left = restrict_rec(enc, pos, keep);
  auto right = restrict_rec(enc, pos, keep);
  if (!left) return right;
  if (!right) return left;
  auto& [le, lm] = *left;
  auto& [re, rm] = *right;
  Enc out;
  out.reserve(1 + le.size() + re.size());
  out.push_back(k_node);
  if (lm < rm) {
    out.insert(out.end(), le.begin(), le.end());
    out.insert(out.end(), re.begin(), re.end());
  } else {
    out.insert(out.end(), re.begin(), re.end());
    out.insert(out.end(), le.begin(), le.end());
  }
  return std::make_pair(std::move(out), std::min(lm, rm));
}

}  // namespace detail

// Induced rooted topology on a nonempty subset of the leaves, with vertices
// of one remaining child contracted away.
inline RootedTopology restrict_rooted(const RootedTopology& t, const LeafSet& keep) {
  detail::require(!keep.empty(), "restriction to an empty leaf set");
  detail::require_leaf_set(keep, "restriction leaves must be sorted and distinct");
  detail::require(leaf_set_subset(keep, t.leaves()), "restriction leaves must be a subset");
  std::size_t pos = 0;
  auto res = detail::restrict_rec(t.encoding(), pos, keep);
  return detail::TopologyAccess::adopt(std::move(res->first));
}

inline TripletChoice rooted_triple(const RootedTopology& t, const LeafSet& s) {
  detail::require(s.size() == 3, "rooted triple needs exactly three leaves");
  return TripletChoice::read(restrict_rooted(t, s));
}

namespace detail {

// Scratch adjacency representation used for rerooting and unrooted
// restriction; degree-two vertices are contracted when reading back out.
struct TreeGraph {
  struct Node {
    Leaf leaf = -1;  // >= 0 for labeled leaves
    std::vector<int> nbrs;
  };
  std::vector<Node> nodes;
  std::vector<char> alive;

  int add(Leaf l = -1) {
    nodes.push_back({l, {}});
    alive.push_back(1);
    return static_cast<int>(nodes.size()) - 1;
  }
  void link(int a, int b) {
    nodes[static_cast<std::size_t>(a)].nbrs.push_back(b);
    nodes[static_cast<std::size_t>(b)].nbrs.push_back(a);
  }
  int degree(int v) const {
    int d = 0;
    for (int w : nodes[static_cast<std::size_t>(v)].nbrs)
      if (alive[static_cast<std::size_t>(w)]) ++d;
    return d;
  }
  int find_leaf(Leaf l) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (alive[i] && nodes[i].leaf == l) return static_cast<int>(i);
    return -1;
  }
};

inline int graph_add_rooted(TreeGraph& g, const Enc& enc, std::size_t& pos) {
  const std::int32_t v = enc[pos];
  if (v != k_node) {
    ++pos;
    return g.add(v);
  }
  ++pos;
  int me = g.add();
  int l = graph_add_rooted(g, enc, pos);
  int r = graph_add_rooted(g, enc, pos);
  g.link(me, l);
  g.link(me, r);
  return me;
}

// Root node is always index 0.
inline TreeGraph graph_from_rooted(const RootedTopology& t) {
  TreeGraph g;
  std::size_t pos = 0;
  graph_add_rooted(g, t.encoding(), pos);
  return g;
}

inline TreeGraph graph_from_unrooted(const UnrootedTopology& u) {
  TreeGraph g = graph_from_rooted(u.rest());
  int h = g.add(u.handle());
  g.link(0, h);
  return g;
}

// Read a canonical rooted topology downward from `v`, skipping `parent`,
// contracting any degree-two vertices encountered.
inline RootedTopology graph_read_rooted(const TreeGraph& g, int v, int parent) {
  for (;;) {
    const TreeGraph::Node& node = g.nodes[static_cast<std::size_t>(v)];
    std::array<int, 3> kids{};
    int nkids = 0;
    for (int w : node.nbrs) {
      if (w == parent || !g.alive[static_cast<std::size_t>(w)]) continue;
      if (nkids < 3) kids[static_cast<std::size_t>(nkids)] = w;
      ++nkids;
    }
    if (nkids == 0) {
      detail::require(node.leaf >= 0, "dangling internal vertex");
      return RootedTopology::leaf(node.leaf);
    }
    if (nkids == 1) {  // contract and continue downward
      parent = v;
      v = kids[0];
      continue;
    }
    detail::require(nkids == 2, "vertex degree exceeds three");
    return RootedTopology::join(graph_read_rooted(g, kids[0], v),
                                graph_read_rooted(g, kids[1], v));
  }
}

inline UnrootedTopology graph_read_unrooted(const TreeGraph& g) {
  int best = -1;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    if (!g.alive[i] || g.nodes[i].leaf < 0) continue;
    if (best < 0 || g.nodes[i].leaf < g.nodes[static_cast<std::size_t>(best)].leaf)
      best = static_cast<int>(i);
  }
  detail::require(best >= 0, "graph has no leaves");
  int nbr = -1;
  for (int w : g.nodes[static_cast<std::size_t>(best)].nbrs)
    if (g.alive[static_cast<std::size_t>(w)]) nbr = w;
  detail::require(nbr >= 0, "isolated leaf");
  RootedTopology rest = graph_read_rooted(g, nbr, best);
  return UnrootedTopology::from_parts(g.nodes[static_cast<std::size_t>(best)].leaf,
                                      std::move(rest));
}

}  // namespace detail

// Induced trivalent topology on >= 3 leaves; exactly 3 gives the star.
inline UnrootedTopology restrict_unrooted(const UnrootedTopology& t, const LeafSet& keep) {
  detail::require(keep.size() >= 3, "unrooted restriction needs at least three leaves");
  detail::require_leaf_set(keep, "restriction leaves must be sorted and distinct");
  detail::require(leaf_set_subset(keep, t.leaves()), "restriction leaves must be a subset");
  if (leaf_set_contains(keep, t.handle())) {
    LeafSet rest_keep;
    rest_keep.reserve(keep.size() - 1);
    for (Leaf x : keep)
      if (x != t.handle()) rest_keep.push_back(x);
    return UnrootedTopology::from_parts(t.handle(), restrict_rooted(t.rest(), rest_keep));
  }
  // The handle drops out, so its former neighbor becomes a degree-two vertex;
  // rebuild from the rooted restriction and let the read-off contract it.
  RootedTopology r = restrict_rooted(t.rest(), keep);
  detail::TreeGraph g = detail::graph_from_rooted(r);
  return detail::graph_read_unrooted(g);
}

inline QuartetChoice quartet(const UnrootedTopology& t, const LeafSet& s) {
  detail::require(s.size() == 4, "quartet needs exactly four leaves");
  return QuartetChoice::read(restrict_unrooted(t, s));
}

// Delete leaf0 and root the remainder at its former neighbor.
inline RootedTopology root_at_leaf(const UnrootedTopology& t, Leaf leaf0) {
  detail::require(t.has_leaf(leaf0), "rooting leaf is not in the tree");
  if (leaf0 == t.handle()) return t.rest();
  detail::TreeGraph g = detail::graph_from_unrooted(t);
  int node = g.find_leaf(leaf0);
  int nbr = -1;
  for (int w : g.nodes[static_cast<std::size_t>(node)].nbrs)
    if (g.alive[static_cast<std::size_t>(w)]) nbr = w;
  g.alive[static_cast<std::size_t>(node)] = 0;
  return detail::graph_read_rooted(g, nbr, node);
}

// Attach a fresh leaf at the root, producing the trivalent tree on
// leaves(t) + {leaf0}. Inverse of root_at_leaf.
inline UnrootedTopology unroot(const RootedTopology& t, Leaf leaf0) {
  detail::require(leaf0 >= 0, "leaf ids must be nonnegative");
  detail::require(!t.has_leaf(leaf0), "new leaf already present");
  detail::require(t.leaf_count() >= 2, "unrooted trees need at least three leaves");
  if (leaf0 < t.min_leaf()) return UnrootedTopology::from_parts(leaf0, t);
  detail::TreeGraph g = detail::graph_from_rooted(t);
  int h = g.add(leaf0);
  g.link(0, h);
  return detail::graph_read_unrooted(g);
}

}  // namespace tangle
