// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cli_runner.hpp"
#include "tangle/tangle.hpp"

using namespace tangle;

namespace {

int failures = 0;

void run(const std::string& name, const std::function<bool(std::string&)>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string note;
  bool ok = false;
  try {
    ok = body(note);
  } catch (const std::exception& e) {
    note = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
          .count() /
      1000.0;
  if (!ok) ++failures;
  std::printf("[%s] %-38s %7.2fs  %s\n", ok ? "PASS" : "FAIL", name.c_str(), secs,
              note.c_str());
  std::fflush(stdout);
}

LeafSet one_to(std::size_t n) {
  LeafSet labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<Leaf>(i + 1);
  return labels;
}

RootedMultiset random_rooted_multiset(const LeafSet& labels, std::size_t r,
                                      std::mt19937_64& rng) {
  std::vector<RootedTopology> members;
  for (std::size_t i = 0; i < r; ++i) members.push_back(random_rooted_on(labels, rng));
  return RootedMultiset(std::move(members));
}

UnrootedMultiset random_unrooted_multiset(const LeafSet& labels, std::size_t r,
                                          std::mt19937_64& rng) {
  std::vector<UnrootedTopology> members;
  for (std::size_t i = 0; i < r; ++i) members.push_back(random_unrooted_on(labels, rng));
  return UnrootedMultiset(std::move(members));
}

bool criterion_rd1(std::string& note) {
  std::vector<RootedTopology> trees = enumerate_rooted(5);
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < trees.size(); ++i)
    for (std::size_t j = i + 1; j < trees.size(); ++j) {
      ++pairs;
      RootedMultiset s1({trees[i]}), s2({trees[j]});
      if (min_disentangling(s1, s2).cardinality != 3) {
        note = "pair " + emit_newick(trees[i]) + " vs " + emit_newick(trees[j]);
        return false;
      }
    }
  note = std::to_string(pairs) + " rooted pairs on 5 leaves, all cardinality 3";
  return true;
}

bool criterion_d1(std::string& note) {
  std::vector<UnrootedTopology> trees = enumerate_unrooted(6);
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < trees.size(); ++i)
    for (std::size_t j = i + 1; j < trees.size(); ++j) {
      ++pairs;
      UnrootedMultiset s1({trees[i]}), s2({trees[j]});
      if (min_disentangling(s1, s2).cardinality != 4) {
        note = "pair " + emit_newick(trees[i]) + " vs " + emit_newick(trees[j]);
        return false;
      }
    }
  note = std::to_string(pairs) + " unrooted pairs on 6 leaves, all cardinality 4";
  return true;
}

bool criterion_k2_tight(std::string& note) {
  FamilyPair fam = build_family_pair(2);
  if (!verify_entangled(fam.odd, fam.even, 5)) {
    note = "families split by a 5-subset";
    return false;
  }
  DisentangleResult d = min_disentangling(fam.odd, fam.even);
  if (d.cardinality != 6 || g_bound(2) != 6) {
    note = "cardinality " + std::to_string(d.cardinality);
    return false;
  }
  note = "entangled at 5, cardinality 6 = bound(2)";
  return true;
}

bool k3_pair_holds(const RootedMultiset& s1, const RootedMultiset& s2, std::string& note) {
  if (!verify_entangled(s1, s2, 8)) {
    note = "split by an 8-subset";
    return false;
  }
  if (s1 == s2) {
    note = "families coincide";
    return false;
  }
  DisentangleResult d = min_disentangling(s1, s2);
  if (d.cardinality != 9) {
    note = "cardinality " + std::to_string(d.cardinality);
    return false;
  }
  return true;
}

bool criterion_k3(std::string& note) {
  FamilyPair fam = build_family_pair(3);
  if (fam.odd.size() != 4 || fam.even.size() != 4) {
    note = "family size is not 4";
    return false;
  }
  if (!k3_pair_holds(fam.odd, fam.even, note)) return false;
  note = "size-4 families on 9 leaves agree on all 9 8-subsets, cardinality 9 = bound(4)";
  return true;
}

bool criterion_k3_padded(std::string& note) {
  FamilyPair fam = build_family_pair(3);
  for (std::size_t r : {5, 6, 7}) {
    auto [s1, s2] = pad_family_pair(fam, r);
    if (s1.size() != r || s2.size() != r) {
      note = "padded size mismatch at r=" + std::to_string(r);
      return false;
    }
    if (!k3_pair_holds(s1, s2, note)) {
      note += " at r=" + std::to_string(r);
      return false;
    }
  }
  note = "padded pairs for r=5,6,7 keep level 8 and cardinality 9";
  return true;
}

bool criterion_bounds(std::string& note) {
  const std::size_t rs[] = {2, 3, 4};
  const std::size_t ns[] = {7, 8, 9};
  const std::size_t per_cell = 1112;  // 9 cells x 1112 >= 10^4 per mode
  std::mt19937_64 rng(20240811);
  std::size_t rooted_pairs = 0, unrooted_pairs = 0;
  for (std::size_t r : rs)
    for (std::size_t n : ns) {
      LeafSet labels = one_to(n);
      for (std::size_t t = 0; t < per_cell; ++t) {
        RootedMultiset s1 = random_rooted_multiset(labels, r, rng);
        RootedMultiset s2 = s1;
        while (s1 == s2) s2 = random_rooted_multiset(labels, r, rng);
        ++rooted_pairs;
        const std::size_t card = min_disentangling(s1, s2).cardinality;
        if (card > g_bound(r)) {
          note = "rooted cardinality " + std::to_string(card) + " > bound at r=" +
                 std::to_string(r) + " n=" + std::to_string(n);
          return false;
        }
      }
      for (std::size_t t = 0; t < per_cell; ++t) {
        UnrootedMultiset s1 = random_unrooted_multiset(labels, r, rng);
        UnrootedMultiset s2 = s1;
        while (s1 == s2) s2 = random_unrooted_multiset(labels, r, rng);
        ++unrooted_pairs;
        const std::size_t card = min_disentangling(s1, s2).cardinality;
        if (card > g_bound(r) + 1) {
          note = "unrooted cardinality " + std::to_string(card) + " > bound at r=" +
                 std::to_string(r) + " n=" + std::to_string(n);
          return false;
        }
      }
    }
  note = std::to_string(rooted_pairs) + " rooted and " + std::to_string(unrooted_pairs) +
         " unrooted random pairs within the bounds";
  return true;
}

bool criterion_bridge(std::string& note) {
  std::mt19937_64 rng(777);
  std::size_t checked = 0;
  while (checked < 500) {
    const std::size_t n = 5 + rng() % 4;  // 5..8
    const std::size_t r = 1 + rng() % 4;  // 1..4
    LeafSet labels = one_to(n);
    RootedMultiset s1 = random_rooted_multiset(labels, r, rng);
    RootedMultiset s2 = (rng() % 10 == 0) ? s1 : random_rooted_multiset(labels, r, rng);
    const std::size_t m = std::min(g_bound(r), n);
    bool restrictions_agree = true;
    for (const LeafSet& k : combinations(labels, m))
      if (restrict_multiset(s1, k) != restrict_multiset(s2, k)) {
        restrictions_agree = false;
        break;
      }
    const bool tables_agree =
        marginals_equal(encode_multiset(s1), encode_multiset(s2), gamma_r(n, r));
    if (tables_agree != restrictions_agree) {
      note = "mismatch at n=" + std::to_string(n) + " r=" + std::to_string(r);
      return false;
    }
    ++checked;
  }
  note = "500 random pairs: marginal equality iff all restrictions agree";
  return true;
}

bool criterion_kahle(std::string& note) {
  const std::vector<SmallComplexInstance> battery = {
      SmallComplexInstance::from_facets({1}, {2}, {{}}),
      SmallComplexInstance::from_facets({1}, {3}, {{}}),
      SmallComplexInstance::from_facets({1, 2}, {2, 2}, {{1}, {2}}),
      SmallComplexInstance::from_facets({1, 2}, {3, 3}, {{1}, {2}}),
      SmallComplexInstance::from_facets({1, 2, 3}, {2, 2, 2}, {{1, 2}, {1, 3}, {2, 3}}),
      SmallComplexInstance::from_facets({1, 2, 3}, {3, 3, 3}, {{1, 2}, {1, 3}, {2, 3}}),
  };
  for (std::size_t i = 0; i < battery.size(); ++i) {
    const std::size_t s = battery[i].smallest_nonface();
    auto min = min_kernel_one_norm(battery[i], 2);
    if (!min || *min < (1LL << s)) {
      note = "instance " + std::to_string(i) + " broke the 2^s bound";
      return false;
    }
  }
  note = "6 instances with s=1,2,3: exhaustive minima all reach 2^s";
  return true;
}

bool criterion_rooting(std::string& note) {
  std::mt19937_64 rng(424242);
  std::size_t checked = 0;
  while (checked < 1000) {
    const std::size_t n = 5 + rng() % 5;  // 5..9
    const std::size_t r = 1 + rng() % 4;
    LeafSet labels = one_to(n);
    UnrootedMultiset s1 = random_unrooted_multiset(labels, r, rng);
    UnrootedMultiset s2 = random_unrooted_multiset(labels, r, rng);
    if (s1 == s2) continue;
    Leaf leaf0 = labels[rng() % n];
    RootingReductionReport rep = rooting_reduction_check(s1, s2, leaf0);
    if (!rep.ok) {
      note = "implication failed at n=" + std::to_string(n) + " r=" + std::to_string(r);
      return false;
    }
    ++checked;
  }
  note = "1000 random unrooted pairs: every rooted witness lifts";
  return true;
}

bool criterion_cli_determinism(std::string& note) {
  using cli_test::TempDir;
  using cli_test::run_cli;
  if (!cli_test::cli_path()) {
    note = "TANGLE_CLI not set";
    return false;
  }
  TempDir dir;
  std::string tree = dir.file("t.nwk", "(((1,2),3),4);\n");
  std::string f1 = dir.file("s1.txt", "((1,2),(3,4));\n((1,3),(2,4));\n");
  std::string f2 = dir.file("s2.txt", "((1,4),(2,3));\n((1,3),(2,4));\n");
  std::string prefix = dir.path() + "/fam";

  const std::vector<std::pair<std::string, std::string>> invocations = {
      {"restrict", "restrict " + tree + " 1,3,4 --rooted --json"},
      {"dnumber_t1", "dnumber " + f1 + " " + f2 + " --rooted --json --threads 1"},
      {"dnumber_t3", "dnumber " + f1 + " " + f2 + " --rooted --json --threads 3"},
      {"humphries_t1", "humphries 2 3 --out-prefix " + prefix + " --json --threads 1"},
      {"humphries_t3", "humphries 2 3 --out-prefix " + prefix + " --json --threads 3"},
      {"verify_t1", "verify bounds --r 2 --n 7 --trials 50 --seed 9 --json --threads 1"},
      {"verify_t3", "verify bounds --r 2 --n 7 --trials 50 --seed 9 --json --threads 3"},
      {"kahle", "verify kahle --json"},
  };
  std::map<std::string, std::string> first;
  for (int round = 0; round < 2; ++round) {
    for (const auto& [name, args] : invocations) {
      cli_test::RunResult res = run_cli(args);
      if (res.exit_code != 0) {
        note = name + " exited " + std::to_string(res.exit_code);
        return false;
      }
      auto [it, inserted] = first.emplace(name, res.out);
      if (!inserted && it->second != res.out) {
        note = name + " output changed between runs";
        return false;
      }
    }
  }
  // thread count must not affect the bytes
  for (const char* cmd : {"dnumber", "humphries", "verify"}) {
    if (first[std::string(cmd) + "_t1"] != first[std::string(cmd) + "_t3"]) {
      note = std::string(cmd) + " differs across thread counts";
      return false;
    }
  }
  note = "byte-identical JSON across reruns and thread counts";
  return true;
}

}  // namespace

int main() {
  run("rooted pairs n=5 need exactly 3", criterion_rd1);
  run("unrooted pairs n=6 need exactly 4", criterion_d1);
  run("k=2 families tight at 6", criterion_k2_tight);
  run("k=3 r=4 families tight at 9", criterion_k3);
  run("k=3 padded r=5,6,7 stay tight", criterion_k3_padded);
  run("random pairs respect the bounds", criterion_bounds);
  run("marginal/restriction bridge", criterion_bridge);
  run("kernel minima reach 2^s", criterion_kahle);
  run("rooted witnesses lift to unrooted", criterion_rooting);
  run("CLI reports are deterministic", criterion_cli_determinism);
  if (failures) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
