#pragma once

// Contingency-table view of tree multisets. A rooted tree on a leaf set X
// determines one of three triplet choices on every 3-subset of X; the table
// of a multiset counts, per full choice assignment, how many members realize
// it. Tables stay sparse: a length-r list has at most r nonzero entries.

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tangle/combinatorics.hpp"
#include "tangle/disentangle.hpp"
#include "tangle/tree.hpp"

namespace tangle {

using Triple = std::array<Leaf, 3>;  // strictly increasing

inline Triple make_triple(Leaf a, Leaf b, Leaf c) {
  Triple t{a, b, c};
  std::sort(t.begin(), t.end());
  detail::require(t[0] < t[1] && t[1] < t[2], "a triple needs three distinct leaves");
  return t;
}

// All 3-subsets of a sorted leaf set, lexicographically ordered.
inline std::vector<Triple> all_triples(const LeafSet& leaves) {
  std::vector<Triple> out;
  const std::size_t n = leaves.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) out.push_back({leaves[i], leaves[j], leaves[k]});
  return out;
}

// Integer table indexed by tuples of triplet choices over an explicit sorted
// axis list of 3-subsets. Zero entries are never stored.
class SparseTableVector {
 public:
  using Key = std::vector<std::uint8_t>;  // one choice code (0..2) per axis

  SparseTableVector() = default;

  SparseTableVector(LeafSet leaves, std::vector<Triple> axes)
      : leaves_(std::move(leaves)), axes_(std::move(axes)) {
    detail::require(std::is_sorted(axes_.begin(), axes_.end()) &&
                        std::adjacent_find(axes_.begin(), axes_.end()) == axes_.end(),
                    "axes must be sorted and distinct");
    for (const Triple& t : axes_)
      for (Leaf x : t)
        detail::require(leaf_set_contains(leaves_, x), "axis leaf outside the ground set");
  }

  static SparseTableVector with_all_axes(LeafSet leaves) {
    std::vector<Triple> axes = all_triples(leaves);
    return SparseTableVector(std::move(leaves), std::move(axes));
  }

  const LeafSet& leaves() const { return leaves_; }
  const std::vector<Triple>& axes() const { return axes_; }
  const std::map<Key, long long>& entries() const { return entries_; }
  bool has_full_axes() const { return axes_.size() == binomial_capped(leaves_.size(), 3); }

  void add(const Key& key, long long delta) {
    detail::require(key.size() == axes_.size(), "key arity mismatch");
    if (delta == 0) return;
    auto it = entries_.find(key);
    if (it == entries_.end()) {
      entries_.emplace(key, delta);
      return;
    }
    it->second += delta;
    if (it->second == 0) entries_.erase(it);
  }

  long long total() const {
    long long s = 0;
    for (const auto& [k, v] : entries_) s += v;
    return s;
  }

  long long one_norm() const {
    long long s = 0;
    for (const auto& [k, v] : entries_) s += v < 0 ? -v : v;
    return s;
  }

  // this += c * other; axes must agree.
  void add_scaled(const SparseTableVector& other, long long c) {
    detail::require(axes_ == other.axes_ && leaves_ == other.leaves_,
                    "tables must share axes");
    for (const auto& [k, v] : other.entries_) add(k, c * v);
  }

  friend bool operator==(const SparseTableVector&, const SparseTableVector&) = default;

 private:
  LeafSet leaves_;
  std::vector<Triple> axes_;
  std::map<Key, long long> entries_;
};

// Unit table of a single tree: its triplet choice on every 3-subset.
inline SparseTableVector encode_tree(const RootedTopology& t) {
  detail::require(t.leaf_count() >= 3, "encoding needs at least three leaves");
  SparseTableVector u = SparseTableVector::with_all_axes(t.leaves());
  SparseTableVector::Key key;
  key.reserve(u.axes().size());
  for (const Triple& s : u.axes()) {
    LeafSet sub(s.begin(), s.end());
    key.push_back(static_cast<std::uint8_t>(rooted_triple(t, sub).choice_code()));
  }
  u.add(key, 1);
  return u;
}

// Sum of the member encodings; the 1-norm equals the list length.
inline SparseTableVector encode_multiset(const RootedMultiset& s) {
  detail::require(s.leaves().size() >= 3, "encoding needs at least three leaves");
  SparseTableVector u = SparseTableVector::with_all_axes(s.leaves());
  for (const RootedTopology& t : s.members()) u.add_scaled(encode_tree(t), 1);
  return u;
}

// Rebuild the unique rooted tree carrying the given triplet choices.
// Leaves in one root cluster are linked whenever some third leaf sits apex
// above them; the clusters are the connected components, and there must be
// exactly two of them at every level.
inline RootedTopology tree_from_triples(
    const LeafSet& leaves, const std::function<TripletChoice(const Triple&)>& choice) {
  detail::require(leaves.size() >= 1, "empty leaf set");
  struct Builder {
    const std::function<TripletChoice(const Triple&)>& choice;
    RootedTopology build(const LeafSet& s) {
      if (s.size() == 1) return RootedTopology::leaf(s[0]);
      if (s.size() == 2)
        return RootedTopology::join(RootedTopology::leaf(s[0]), RootedTopology::leaf(s[1]));
      const std::size_t n = s.size();
      std::vector<std::size_t> parent(n);
      for (std::size_t i = 0; i < n; ++i) parent[i] = i;
      std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k)
          for (std::size_t i = 0; i < n; ++i) {
            if (i == j || i == k) continue;
            TripletChoice tc = choice(make_triple(s[i], s[j], s[k]));
            if (tc.apex == s[i]) {
              parent[find(j)] = find(k);
              break;
            }
          }
      std::vector<std::size_t> roots;
      for (std::size_t i = 0; i < n; ++i) roots.push_back(find(i));
      std::vector<std::size_t> distinct = roots;
      std::sort(distinct.begin(), distinct.end());
      distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
      detail::require(distinct.size() == 2, "choices do not describe a tree");
      LeafSet a, b;
      for (std::size_t i = 0; i < n; ++i) (roots[i] == roots[0] ? a : b).push_back(s[i]);
      return RootedTopology::join(build(a), build(b));
    }
  } builder{choice};
  RootedTopology t = builder.build(leaves);
  return t;
}

// Inverse of encode_multiset; keys are decoded with multiplicity and the
// result is verified by re-encoding.
inline RootedMultiset decode_multiset(const SparseTableVector& u) {
  detail::require(u.has_full_axes(), "decoding needs a full-axis table");
  detail::require(!u.entries().empty(), "cannot decode an empty table");
  std::map<Triple, std::size_t> axis_index;
  for (std::size_t i = 0; i < u.axes().size(); ++i) axis_index.emplace(u.axes()[i], i);
  std::vector<RootedTopology> members;
  for (const auto& [key, count] : u.entries()) {
    detail::require(count > 0, "multiset tables have positive entries");
    auto choice = [&](const Triple& t) {
      const std::size_t idx = axis_index.at(t);
      const int code = key[idx];
      // code is the apex position within the sorted triple
      return TripletChoice(t[static_cast<std::size_t>(code)], t[(code + 1) % 3],
                           t[(code + 2) % 3]);
    };
    RootedTopology t = tree_from_triples(u.leaves(), choice);
    SparseTableVector check = encode_tree(t);
    detail::require(check.entries().count(key) == 1, "table entry is not tree-realizable");
    for (long long c = 0; c < count; ++c) members.push_back(t);
  }
  return RootedMultiset(std::move(members));
}

// L-marginal: project keys onto the axis sublist L and accumulate.
inline SparseTableVector marginal(const SparseTableVector& u, std::vector<Triple> axes) {
  std::sort(axes.begin(), axes.end());
  axes.erase(std::unique(axes.begin(), axes.end()), axes.end());
  std::vector<std::size_t> idx;
  idx.reserve(axes.size());
  for (const Triple& t : axes) {
    auto it = std::lower_bound(u.axes().begin(), u.axes().end(), t);
    detail::require(it != u.axes().end() && *it == t, "marginal axis missing from the table");
    idx.push_back(static_cast<std::size_t>(it - u.axes().begin()));
  }
  SparseTableVector out(u.leaves(), std::move(axes));
  for (const auto& [key, v] : u.entries()) {
    SparseTableVector::Key sub;
    sub.reserve(idx.size());
    for (std::size_t i : idx) sub.push_back(key[i]);
    out.add(sub, v);
  }
  return out;
}

// Complex on the 3-subsets of an n-leaf ground set: a collection of triples
// is a face iff its union has at most `budget` leaves.
struct TripleComplex {
  std::size_t n = 0;
  std::size_t budget = 0;

  bool is_face(const std::vector<Triple>& triples) const {
    LeafSet u;
    for (const Triple& t : triples) u.insert(u.end(), t.begin(), t.end());
    return make_leaf_set(std::move(u)).size() <= budget;
  }
};

inline TripleComplex gamma_r(std::size_t n, std::size_t r) {
  detail::require(n >= 3, "complex needs at least three leaves");
  return {n, g_bound(r)};
}

// Equality of all facet marginals. Every facet lies inside the triples of
// some min(budget, n)-subset U, and those collections are faces themselves,
// so comparing the U-marginals decides equality over the whole complex.
inline bool marginals_equal(const SparseTableVector& u1, const SparseTableVector& u2,
                            const TripleComplex& gamma) {
  detail::require(u1.leaves() == u2.leaves(), "tables must share the ground set");
  detail::require(u1.leaves().size() == gamma.n, "complex size mismatch");
  detail::require(u1.has_full_axes() && u2.has_full_axes(),
                  "facet comparison needs full-axis tables");
  const std::size_t m = std::min(gamma.budget, gamma.n);
  if (m < 3) return u1.total() == u2.total();  // only the empty face exists
  for (const LeafSet& u : combinations(u1.leaves(), m)) {
    const std::vector<Triple> axes = all_triples(u);
    if (!(marginal(u1, axes) == marginal(u2, axes))) return false;
  }
  return true;
}

// Cardinality of the smallest collection of triples that is not a face,
// found by a pruned search over antichains of triples and cross-checked
// against the closed form budget/3 + 1 attained by disjoint triples.
inline std::size_t smallest_nonface_size(const TripleComplex& gamma) {
  const std::size_t expected = gamma.budget / 3 + 1;
  detail::require(gamma.n >= 3 * expected,
                  "ground set too small to place the disjoint-triple witness");
  LeafSet ground(gamma.n);
  for (std::size_t i = 0; i < gamma.n; ++i) ground[i] = static_cast<Leaf>(i);
  const std::vector<Triple> triples = all_triples(ground);

  // DFS over index-increasing families; |union| can grow by at most 3 per
  // further member, which prunes every family that cannot clear the budget.
  std::function<bool(std::size_t, std::size_t, const LeafSet&, std::size_t)> rec =
      [&](std::size_t depth, std::size_t start, const LeafSet& uni, std::size_t m) -> bool {
    if (uni.size() > gamma.budget) return true;
    if (depth == m) return false;
    for (std::size_t i = start; i < triples.size(); ++i) {
      LeafSet next = uni;
      for (Leaf x : triples[i])
        if (!leaf_set_contains(next, x))
          next.insert(std::lower_bound(next.begin(), next.end(), x), x);
      if (next.size() + 3 * (m - depth - 1) <= gamma.budget) continue;
      if (rec(depth + 1, i + 1, next, m)) return true;
    }
    return false;
  };
  for (std::size_t m = 1; m <= expected; ++m) {
    if (rec(0, 0, {}, m)) {
      detail::require(m == expected, "search disagrees with the closed form");
      return m;
    }
  }
  throw std::logic_error("non-face search failed to reach the closed form");
}

// Abstract desk-scale instance: ground set with per-point dimensions and an
// explicit downward-closed face family.
struct SmallComplexInstance {
  std::vector<int> ground;               // sorted point ids
  std::vector<int> dims;                 // parallel to ground, each >= 2
  std::vector<std::vector<int>> faces;   // sorted id lists, downward closed

  static SmallComplexInstance from_facets(std::vector<int> ground, std::vector<int> dims,
                                          const std::vector<std::vector<int>>& facets) {
    SmallComplexInstance inst;
    inst.ground = std::move(ground);
    inst.dims = std::move(dims);
    detail::require(inst.ground.size() == inst.dims.size(), "one dimension per point");
    for (int d : inst.dims) detail::require(d >= 2, "dimensions must be at least two");
    std::vector<std::vector<int>> all;
    for (std::vector<int> f : facets) {
      std::sort(f.begin(), f.end());
      const std::size_t k = f.size();
      for (std::uint64_t mask = 0; mask < (1ULL << k); ++mask) {
        std::vector<int> sub;
        for (std::size_t i = 0; i < k; ++i)
          if (mask & (1ULL << i)) sub.push_back(f[i]);
        all.push_back(std::move(sub));
      }
    }
    if (facets.empty()) all.push_back({});
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    inst.faces = std::move(all);
    return inst;
  }

  // Cardinality of the smallest subset of the ground set outside the family.
  std::size_t smallest_nonface() const {
    const std::size_t n = ground.size();
    for (std::size_t m = 0; m <= n; ++m) {
      std::vector<std::size_t> pick(m);
      for (std::size_t i = 0; i < m; ++i) pick[i] = i;
      for (;;) {
        std::vector<int> sub(m);
        for (std::size_t i = 0; i < m; ++i) sub[i] = ground[pick[i]];
        if (std::find(faces.begin(), faces.end(), sub) == faces.end()) return m;
        std::size_t i = m;
        bool advanced = false;
        while (i > 0) {
          --i;
          if (pick[i] != i + n - m) {
            ++pick[i];
            for (std::size_t j = i + 1; j < m; ++j) pick[j] = pick[j - 1] + 1;
            advanced = true;
            break;
          }
        }
        if (!advanced) break;
      }
    }
    throw std::logic_error("the full ground set is a face; no non-face exists");
  }
};

namespace detail {

// Depth-first scan over the entry box with an explicit stack (instance sizes
// inside the guard can exceed safe recursion depth). At each cell, any
// constraint with one open slot forces the value; completed constraints must
// sum to zero; partial 1-norms at or above the best seen are cut.
struct KernelSearch {
  int bound = 1;
  std::size_t cells = 1;
  std::vector<std::vector<std::size_t>> cell_constraints;  // cell -> constraints
  std::vector<long long> partial;
  std::vector<std::size_t> remaining;
  long long best = std::numeric_limits<long long>::max();

  struct Frame {
    int value = 0;
    bool forced = false;
    bool open = false;  // value currently applied to the constraint sums
    bool exhausted = false;
  };

  bool apply(std::size_t cell, int v) {
    bool ok = true;
    for (std::size_t c : cell_constraints[cell]) {
      partial[c] += v;
      if (--remaining[c] == 0 && partial[c] != 0) ok = false;
    }
    return ok;
  }

  void undo(std::size_t cell, int v) {
    for (std::size_t c : cell_constraints[cell]) {
      partial[c] -= v;
      ++remaining[c];
    }
  }

  void run() {
    std::vector<Frame> stack(cells);
    std::size_t depth = 0;  // cells filled so far
    long long norm = 0;
    std::size_t nonzero = 0;
    bool entering = true;
    for (;;) {
      if (depth == cells) {
        if (nonzero > 0 && norm < best) best = norm;
        --depth;
        entering = false;
        continue;
      }
      Frame& f = stack[depth];
      if (entering) {
        f.open = false;
        f.exhausted = false;
        f.forced = false;
        f.value = -bound;
        for (std::size_t c : cell_constraints[depth]) {
          if (remaining[c] == 1) {
            const long long forced = -partial[c];
            f.forced = true;
            f.value = static_cast<int>(forced);
            if (forced < -bound || forced > bound) f.exhausted = true;
            break;
          }
        }
        entering = false;
      } else if (f.open) {
        undo(depth, f.value);
        norm -= f.value < 0 ? -f.value : f.value;
        if (f.value != 0) --nonzero;
        f.open = false;
        if (f.forced || f.value >= bound) f.exhausted = true;
        else ++f.value;
      }
      if (f.exhausted) {
        if (depth == 0) return;
        --depth;
        continue;
      }
      const long long v_norm = f.value < 0 ? -f.value : f.value;
      if (norm + v_norm >= best) {
        // magnitudes only grow from here for nonnegative candidates
        if (f.forced || f.value >= 0) {
          f.exhausted = true;
        } else {
          ++f.value;  // a smaller-magnitude negative may still fit
        }
        continue;
      }
      const bool ok = apply(depth, f.value);
      f.open = true;
      norm += v_norm;
      if (f.value != 0) ++nonzero;
      if (ok) {
        ++depth;
        entering = true;
      }
      // otherwise this frame reopens next pass and advances the candidate
    }
  }
};

}  // namespace detail

// Exhaustive minimum 1-norm over nonzero integer tables with entries in
// [-entry_bound, entry_bound] whose facet marginals all vanish.
inline std::optional<long long> min_kernel_one_norm(const SmallComplexInstance& inst,
                                                    int entry_bound) {
  detail::require(entry_bound >= 1, "entry bound must be positive");
  std::uint64_t cells = 1;
  for (int d : inst.dims) cells *= static_cast<std::uint64_t>(d);
  detail::require(cells <= 1'000'000ULL / static_cast<std::uint64_t>(2 * entry_bound + 1),
                  "kernel search beyond the feasibility guard");

  // facets = faces without a proper superset in the family
  std::vector<std::vector<int>> facets;
  for (const auto& f : inst.faces) {
    bool maximal = true;
    for (const auto& g : inst.faces)
      if (f != g && std::includes(g.begin(), g.end(), f.begin(), f.end())) {
        maximal = false;
        break;
      }
    if (maximal) facets.push_back(f);
  }

  const std::size_t npts = inst.ground.size();
  std::vector<std::uint64_t> stride(npts, 1);
  for (std::size_t i = npts; i-- > 1;) stride[i - 1] = stride[i] * static_cast<std::uint64_t>(inst.dims[i]);

  detail::KernelSearch ks;
  ks.bound = entry_bound;
  ks.cells = static_cast<std::size_t>(cells);
  ks.cell_constraints.assign(ks.cells, {});
  std::size_t constraint_count = 0;
  for (const auto& facet : facets) {
    std::vector<std::size_t> pos;
    for (int p : facet) {
      auto it = std::lower_bound(inst.ground.begin(), inst.ground.end(), p);
      detail::require(it != inst.ground.end() && *it == p, "face outside the ground set");
      pos.push_back(static_cast<std::size_t>(it - inst.ground.begin()));
    }
    std::uint64_t tuples = 1;
    for (std::size_t p : pos) tuples *= static_cast<std::uint64_t>(inst.dims[p]);
    const std::size_t base = constraint_count;
    constraint_count += static_cast<std::size_t>(tuples);
    for (std::size_t cell = 0; cell < ks.cells; ++cell) {
      std::uint64_t key = 0;
      for (std::size_t p : pos) {
        const std::uint64_t coord = (cell / stride[p]) % static_cast<std::uint64_t>(inst.dims[p]);
        key = key * static_cast<std::uint64_t>(inst.dims[p]) + coord;
      }
      ks.cell_constraints[cell].push_back(base + static_cast<std::size_t>(key));
    }
  }
  ks.partial.assign(constraint_count, 0);
  ks.remaining.assign(constraint_count, 0);
  for (std::size_t cell = 0; cell < ks.cells; ++cell)
    for (std::size_t c : ks.cell_constraints[cell]) ++ks.remaining[c];
  ks.run();
  if (ks.best == std::numeric_limits<long long>::max()) return std::nullopt;
  return ks.best;
}

}  // namespace tangle
