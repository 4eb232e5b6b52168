// Command-line surface: restriction, disentangling search, family
// construction and verification suites, with deterministic machine-readable
// output. Exit codes: 0 ok, 2 parse error, 3 label/argument error, 4 equal
// multisets, 5 verification counterexample.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tangle/tangle.hpp"

using nlohmann::json;
using namespace tangle;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitLabel = 3;
constexpr int kExitEqual = 4;
constexpr int kExitCounterexample = 5;

struct OutputOptions {
  bool as_json = false;
  bool timing = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file '" + path + "'", 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> split_csv(const std::string& csv) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : csv) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// One report per run: human lines by default, sorted-key JSON with --json.
void print_report(const OutputOptions& opts, const std::string& command, const json& inputs,
                  const json& result, const std::vector<std::string>& lines,
                  long long elapsed_ms) {
  if (opts.as_json) {
    json report;
    report["command"] = command;
    report["inputs"] = inputs;
    report["result"] = result;
    if (opts.timing) report["elapsed_ms"] = elapsed_ms;
    std::cout << report.dump() << "\n";
    return;
  }
  for (const std::string& l : lines) std::cout << l << "\n";
  if (opts.timing) std::cout << "elapsed_ms " << elapsed_ms << "\n";
}

std::vector<std::string> witness_names(const LeafSet& witness, const LabelTable& table) {
  std::vector<std::string> names;
  names.reserve(witness.size());
  for (Leaf x : witness) names.push_back(table.name_of(x));
  return names;
}

std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ' ';
    out += names[i];
  }
  return out;
}

struct RestrictArgs {
  std::string tree_file;
  std::string labels;
  bool rooted = false;
  bool unrooted = false;
};

int cmd_restrict(const RestrictArgs& a, const OutputOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string text = read_file(a.tree_file);
  std::vector<std::string> lines = detail::multiset_lines(text);
  if (lines.size() != 1)
    throw ParseError("tree file must contain exactly one Newick line", 0);

  LabelTable table;
  std::string emitted;
  std::vector<std::string> label_names = split_csv(a.labels);
  if (label_names.empty()) throw std::invalid_argument("no restriction labels given");
  if (a.rooted) {
    RootedTopology t = parse_rooted_newick(lines[0], &table);
    LeafSet keep;
    for (const std::string& name : label_names) keep.push_back(table.id_of(name));
    keep = make_leaf_set(std::move(keep));
    emitted = emit_newick(restrict_rooted(t, keep), &table);
  } else {
    UnrootedTopology t = parse_unrooted_newick(lines[0], &table);
    LeafSet keep;
    for (const std::string& name : label_names) keep.push_back(table.id_of(name));
    keep = make_leaf_set(std::move(keep));
    emitted = emit_newick(restrict_unrooted(t, keep), &table);
  }
  const long long ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
  json inputs{{"tree_file", a.tree_file}, {"labels", a.labels},
              {"mode", a.rooted ? "rooted" : "unrooted"}};
  print_report(opts, "restrict", inputs, json{{"newick", emitted}}, {emitted}, ms);
  return 0;
}

struct DnumberArgs {
  std::string file1;
  std::string file2;
  bool rooted = false;
  bool unrooted = false;
  unsigned threads = 1;
};

template <class Topo>
int dnumber_run(const TreeMultiset<Topo>& s1, const TreeMultiset<Topo>& s2,
                const LabelTable& table, const DnumberArgs& a, const OutputOptions& opts,
                const std::chrono::steady_clock::time_point& t0) {
  json inputs{{"file1", a.file1},
              {"file2", a.file2},
              {"mode", a.rooted ? "rooted" : "unrooted"}};
  if (s1 == s2) {
    const long long ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
    print_report(opts, "dnumber", inputs, json{{"equal", true}},
                 {"multisets are equal; no disentangling set exists"}, ms);
    return kExitEqual;
  }
  DisentangleResult d = min_disentangling(s1, s2, a.threads);
  std::vector<std::string> names = witness_names(d.witness, table);
  const long long ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
  json result{{"cardinality", d.cardinality}, {"equal", false}, {"witness", names}};
  print_report(opts, "dnumber", inputs, result,
               {"cardinality " + std::to_string(d.cardinality), "witness " + join_names(names)},
               ms);
  return 0;
}

int cmd_dnumber(const DnumberArgs& a, const OutputOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string text1 = read_file(a.file1);
  std::string text2 = read_file(a.file2);
  if (a.rooted) {
    auto [s1, s2, table] = read_rooted_multiset_pair(text1, text2);
    return dnumber_run(s1, s2, table, a, opts, t0);
  }
  auto [s1, s2, table] = read_unrooted_multiset_pair(text1, text2);
  return dnumber_run(s1, s2, table, a, opts, t0);
}

struct HumphriesArgs {
  std::size_t k = 2;
  std::size_t r = 2;
  std::string base;
  std::string out_prefix;
  unsigned threads = 1;
};

int cmd_humphries(const HumphriesArgs& a, const OutputOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  detail::require(a.k >= 1 && a.k <= 6, "k must lie in 1..6");
  std::optional<RootedTopology> base;
  if (!a.base.empty()) base = parse_rooted_newick(a.base);
  FamilyPair fam = build_family_pair(a.k, std::move(base));
  auto [s1, s2] = pad_family_pair(fam, a.r);
  LabelTable table = gadget_label_table(a.k);

  std::string prefix = a.out_prefix.empty()
                           ? "humphries_k" + std::to_string(a.k) + "_r" + std::to_string(a.r)
                           : a.out_prefix;
  const std::string odd_path = prefix + "_odd.txt";
  const std::string even_path = prefix + "_even.txt";
  {
    std::ofstream odd(odd_path, std::ios::binary);
    std::ofstream even(even_path, std::ios::binary);
    if (!odd || !even) throw std::invalid_argument("cannot write output files");
    odd << write_multiset_text(s1, &table);
    even << write_multiset_text(s2, &table);
  }

  const std::size_t level = 3 * a.k - 1;
  const bool verified = verify_entangled(s1, s2, level, a.threads);
  const long long ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
  json inputs{{"base", a.base}, {"k", a.k}, {"out_prefix", prefix}, {"r", a.r}};
  json result{{"entangled_level", level},
              {"files", json::array({odd_path, even_path})},
              {"leaves", 3 * a.k},
              {"size", a.r},
              {"verified", verified}};
  std::vector<std::string> lines{
      "wrote " + odd_path, "wrote " + even_path,
      "entangled_level " + std::to_string(level) + (verified ? " verified" : " FAILED")};
  print_report(opts, "humphries", inputs, result, lines, ms);
  return verified ? 0 : kExitCounterexample;
}

struct VerifyArgs {
  std::string suite;
  std::string file1;
  std::string file2;
  std::size_t n = 0;
  std::size_t r = 0;
  std::size_t k = 0;
  std::size_t m = 0;
  std::size_t trials = 1000;
  std::optional<std::uint64_t> seed;
  int entry_bound = 2;
  bool unrooted = false;
  unsigned threads = 1;
};

struct SuiteOutcome {
  bool ok = true;
  json result;
  std::vector<std::string> lines;
};

SuiteOutcome suite_rd1(const VerifyArgs& a) {
  const std::size_t n = a.n ? a.n : 5;
  detail::require(n >= 3 && n <= 6, "rd1 supports n in 3..6");
  std::vector<RootedTopology> trees = enumerate_rooted(n);
  SuiteOutcome out;
  std::size_t max_card = 0;
  std::uint64_t pairs = 0;
  for (std::size_t i = 0; i < trees.size(); ++i)
    for (std::size_t j = i + 1; j < trees.size(); ++j) {
      ++pairs;
      RootedMultiset s1({trees[i]}), s2({trees[j]});
      DisentangleResult d = min_disentangling(s1, s2, a.threads);
      max_card = std::max(max_card, d.cardinality);
      if (d.cardinality != 3) {
        out.ok = false;
        out.result["counterexample"] =
            json{{"s1", emit_newick(trees[i])}, {"s2", emit_newick(trees[j])},
                 {"cardinality", d.cardinality}};
        out.lines.push_back("counterexample: " + emit_newick(trees[i]) + "  " +
                            emit_newick(trees[j]));
        return out;
      }
    }
  out.result = json{{"max_cardinality", max_card}, {"n", n}, {"pairs", pairs}};
  out.lines.push_back("rd1 n=" + std::to_string(n) + " pairs=" + std::to_string(pairs) +
                      " max_cardinality=" + std::to_string(max_card));
  return out;
}

SuiteOutcome suite_d1(const VerifyArgs& a) {
  const std::size_t n = a.n ? a.n : 6;
  detail::require(n >= 4 && n <= 7, "d1 supports n in 4..7");
  std::vector<UnrootedTopology> trees = enumerate_unrooted(n);
  SuiteOutcome out;
  std::size_t max_card = 0;
  std::uint64_t pairs = 0;
  for (std::size_t i = 0; i < trees.size(); ++i)
    for (std::size_t j = i + 1; j < trees.size(); ++j) {
      ++pairs;
      UnrootedMultiset s1({trees[i]}), s2({trees[j]});
      DisentangleResult d = min_disentangling(s1, s2, a.threads);
      max_card = std::max(max_card, d.cardinality);
      if (d.cardinality != 4) {
        out.ok = false;
        out.result["counterexample"] =
            json{{"s1", emit_newick(trees[i])}, {"s2", emit_newick(trees[j])},
                 {"cardinality", d.cardinality}};
        out.lines.push_back("counterexample: " + emit_newick(trees[i]) + "  " +
                            emit_newick(trees[j]));
        return out;
      }
    }
  out.result = json{{"max_cardinality", max_card}, {"n", n}, {"pairs", pairs}};
  out.lines.push_back("d1 n=" + std::to_string(n) + " pairs=" + std::to_string(pairs) +
                      " max_cardinality=" + std::to_string(max_card));
  return out;
}

SuiteOutcome suite_humphries(const VerifyArgs& a) {
  const std::size_t k = a.k ? a.k : 2;
  detail::require(k >= 1 && k <= 6, "humphries suite supports k in 1..6");
  const std::size_t r = a.r ? a.r : (1ULL << (k - 1));
  FamilyPair fam = build_family_pair(k);
  auto [s1, s2] = pad_family_pair(fam, r);
  SuiteOutcome out;
  const std::size_t level = 3 * k - 1;
  const bool entangled = verify_entangled(s1, s2, level, a.threads);
  out.result = json{{"entangled_level", level}, {"entangled", entangled}, {"k", k}, {"r", r}};
  out.lines.push_back("humphries k=" + std::to_string(k) + " r=" + std::to_string(r) +
                      " entangled_at=" + std::to_string(level) +
                      (entangled ? " yes" : " NO"));
  out.ok = entangled;
  if (k <= 4 && out.ok) {
    DisentangleResult d = min_disentangling(s1, s2, a.threads);
    out.result["cardinality"] = d.cardinality;
    out.ok = d.cardinality == 3 * k;
    out.lines.push_back("cardinality " + std::to_string(d.cardinality) + " expected " +
                        std::to_string(3 * k));
  }
  if (!out.ok) {
    out.result["counterexample"] =
        json{{"s1", serialize_multiset(s1)}, {"s2", serialize_multiset(s2)}};
  }
  return out;
}

SuiteOutcome suite_bounds(const VerifyArgs& a) {
  detail::require(a.seed.has_value(), "bounds needs an explicit --seed");
  const std::size_t r = a.r ? a.r : 2;
  const std::size_t n = a.n ? a.n : 7;
  detail::require(r >= 1 && r <= 16, "bounds supports r in 1..16");
  detail::require(n >= 4 && n <= 12, "bounds supports n in 4..12");
  std::mt19937_64 rng(*a.seed);
  LeafSet labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<Leaf>(i + 1);
  const std::size_t bound = g_bound(r) + (a.unrooted ? 1 : 0);
  SuiteOutcome out;
  std::size_t max_card = 0;
  for (std::size_t trial = 0; trial < a.trials; ++trial) {
    if (a.unrooted) {
      std::vector<UnrootedTopology> m1, m2;
      for (std::size_t i = 0; i < r; ++i) m1.push_back(random_unrooted_on(labels, rng));
      UnrootedMultiset s1(std::move(m1));
      UnrootedMultiset s2 = s1;
      while (s1 == s2) {
        m2.clear();
        for (std::size_t i = 0; i < r; ++i) m2.push_back(random_unrooted_on(labels, rng));
        s2 = UnrootedMultiset(std::move(m2));
      }
      BoundCheckReport rep = check_upper_bound(s1, s2, a.threads);
      max_card = std::max(max_card, rep.result.cardinality);
      if (!rep.ok) {
        out.ok = false;
        out.result["counterexample"] = json{{"s1", serialize_multiset(s1)},
                                            {"s2", serialize_multiset(s2)},
                                            {"cardinality", rep.result.cardinality},
                                            {"trial", trial}};
        out.lines.push_back("counterexample at trial " + std::to_string(trial));
        return out;
      }
    } else {
      std::vector<RootedTopology> m1, m2;
      for (std::size_t i = 0; i < r; ++i) m1.push_back(random_rooted_on(labels, rng));
      RootedMultiset s1(std::move(m1));
      RootedMultiset s2 = s1;
      while (s1 == s2) {
        m2.clear();
        for (std::size_t i = 0; i < r; ++i) m2.push_back(random_rooted_on(labels, rng));
        s2 = RootedMultiset(std::move(m2));
      }
      BoundCheckReport rep = check_upper_bound(s1, s2, a.threads);
      max_card = std::max(max_card, rep.result.cardinality);
      if (!rep.ok) {
        out.ok = false;
        out.result["counterexample"] = json{{"s1", serialize_multiset(s1)},
                                            {"s2", serialize_multiset(s2)},
                                            {"cardinality", rep.result.cardinality},
                                            {"trial", trial}};
        out.lines.push_back("counterexample at trial " + std::to_string(trial));
        return out;
      }
    }
  }
  out.result = json{{"bound", bound},
                    {"max_cardinality", max_card},
                    {"mode", a.unrooted ? "unrooted" : "rooted"},
                    {"n", n},
                    {"r", r},
                    {"trials", a.trials}};
  out.lines.push_back("bounds r=" + std::to_string(r) + " n=" + std::to_string(n) + " trials=" +
                      std::to_string(a.trials) + " max_cardinality=" + std::to_string(max_card) +
                      " bound=" + std::to_string(bound));
  return out;
}

SuiteOutcome suite_kahle(const VerifyArgs& a) {
  struct Named {
    const char* name;
    SmallComplexInstance inst;
  };
  std::vector<Named> battery;
  battery.push_back({"point_d2", SmallComplexInstance::from_facets({1}, {2}, {{}})});
  battery.push_back({"point_d3", SmallComplexInstance::from_facets({1}, {3}, {{}})});
  battery.push_back({"grid_2x2", SmallComplexInstance::from_facets({1, 2}, {2, 2}, {{1}, {2}})});
  battery.push_back({"grid_3x3", SmallComplexInstance::from_facets({1, 2}, {3, 3}, {{1}, {2}})});
  battery.push_back({"cube_2x2x2", SmallComplexInstance::from_facets(
                                       {1, 2, 3}, {2, 2, 2}, {{1, 2}, {1, 3}, {2, 3}})});
  battery.push_back({"cube_3x3x3", SmallComplexInstance::from_facets(
                                       {1, 2, 3}, {3, 3, 3}, {{1, 2}, {1, 3}, {2, 3}})});

  SuiteOutcome out;
  json instances = json::array();
  for (const Named& item : battery) {
    const std::size_t s = item.inst.smallest_nonface();
    auto min = min_kernel_one_norm(item.inst, a.entry_bound);
    const long long need = 1LL << s;
    const bool pass = min.has_value() && *min >= need;
    instances.push_back(json{{"bound", need},
                             {"min_one_norm", min ? json(*min) : json()},
                             {"name", item.name},
                             {"nonface", s},
                             {"pass", pass}});
    out.lines.push_back(std::string(item.name) + " nonface=" + std::to_string(s) +
                        " min=" + (min ? std::to_string(*min) : std::string("none")) +
                        " bound=" + std::to_string(need) + (pass ? " ok" : " VIOLATION"));
    if (!pass) out.ok = false;
  }
  out.result = json{{"entry_bound", a.entry_bound}, {"instances", instances}};
  return out;
}

// Input-dependent check: do two multiset files agree on every m-subset?
// This is the one suite that can honestly fail, exercising exit code 5.
template <class Topo>
SuiteOutcome entangled_run(const TreeMultiset<Topo>& s1, const TreeMultiset<Topo>& s2,
                           const LabelTable& table, std::size_t m) {
  SuiteOutcome out;
  for (const LeafSet& k : combinations(s1.leaves(), m)) {
    if (disentangles(k, s1, s2)) {
      out.ok = false;
      std::vector<std::string> names = witness_names(k, table);
      out.result["counterexample"] = json{{"witness", names}};
      out.lines.push_back("split by " + join_names(names));
      return out;
    }
  }
  out.result = json{{"entangled", true}, {"m", m}};
  out.lines.push_back("entangled at " + std::to_string(m));
  return out;
}

SuiteOutcome suite_entangled(const VerifyArgs& a) {
  detail::require(!a.file1.empty() && !a.file2.empty(),
                  "entangled needs two multiset files");
  detail::require(a.m >= 1, "entangled needs --m");
  std::string text1 = read_file(a.file1);
  std::string text2 = read_file(a.file2);
  if (a.unrooted) {
    auto [s1, s2, table] = read_unrooted_multiset_pair(text1, text2);
    detail::require(a.m <= s1.leaves().size(), "m exceeds the leaf count");
    return entangled_run(s1, s2, table, a.m);
  }
  auto [s1, s2, table] = read_rooted_multiset_pair(text1, text2);
  detail::require(a.m <= s1.leaves().size(), "m exceeds the leaf count");
  return entangled_run(s1, s2, table, a.m);
}

int cmd_verify(const VerifyArgs& a, const OutputOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteOutcome out;
  if (a.suite == "rd1")
    out = suite_rd1(a);
  else if (a.suite == "d1")
    out = suite_d1(a);
  else if (a.suite == "humphries")
    out = suite_humphries(a);
  else if (a.suite == "bounds")
    out = suite_bounds(a);
  else if (a.suite == "kahle")
    out = suite_kahle(a);
  else if (a.suite == "entangled")
    out = suite_entangled(a);
  else
    throw std::invalid_argument("unknown suite '" + a.suite + "'");
  const long long ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
  json inputs{{"entry_bound", a.entry_bound},
              {"file1", a.file1},
              {"file2", a.file2},
              {"k", a.k},
              {"m", a.m},
              {"n", a.n},
              {"r", a.r},
              {"seed", a.seed ? json(*a.seed) : json()},
              {"suite", a.suite},
              {"trials", a.trials},
              {"unrooted", a.unrooted}};
  out.result["pass"] = out.ok;
  out.lines.push_back(out.ok ? "pass" : "FAIL");
  print_report(opts, "verify", inputs, out.result, out.lines, ms);
  return out.ok ? 0 : kExitCounterexample;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"combinatorics of disentangling sets for leaf-labeled trees"};
  app.require_subcommand(1);
  OutputOptions opts;

  RestrictArgs ra;
  CLI::App* restrict_cmd = app.add_subcommand("restrict", "restrict a tree to a leaf subset");
  restrict_cmd->add_option("tree_file", ra.tree_file, "file with one Newick line")->required();
  restrict_cmd->add_option("labels", ra.labels, "comma-separated leaf labels")->required();
  auto* rr = restrict_cmd->add_flag("--rooted", ra.rooted, "treat the tree as rooted");
  auto* ru = restrict_cmd->add_flag("--unrooted", ra.unrooted, "treat the tree as unrooted");
  restrict_cmd->add_flag("--json", opts.as_json, "emit a JSON report");
  restrict_cmd->add_flag("--timing", opts.timing, "include elapsed time");
  ru->excludes(rr);
  restrict_cmd->final_callback([&] {
    if (!ra.rooted && !ra.unrooted)
      throw CLI::ValidationError("restrict", "one of --rooted/--unrooted is required");
  });

  DnumberArgs da;
  CLI::App* dnumber_cmd =
      app.add_subcommand("dnumber", "minimum disentangling set of two multiset files");
  dnumber_cmd->add_option("file1", da.file1, "first multiset file")->required();
  dnumber_cmd->add_option("file2", da.file2, "second multiset file")->required();
  auto* dr = dnumber_cmd->add_flag("--rooted", da.rooted, "rooted trees");
  auto* du = dnumber_cmd->add_flag("--unrooted", da.unrooted, "unrooted trees");
  dnumber_cmd->add_option("--threads", da.threads, "parallel search width")
      ->check(CLI::Range(1u, 64u));
  dnumber_cmd->add_flag("--json", opts.as_json, "emit a JSON report");
  dnumber_cmd->add_flag("--timing", opts.timing, "include elapsed time");
  du->excludes(dr);
  dnumber_cmd->final_callback([&] {
    if (!da.rooted && !da.unrooted)
      throw CLI::ValidationError("dnumber", "one of --rooted/--unrooted is required");
  });

  HumphriesArgs ha;
  CLI::App* humphries_cmd =
      app.add_subcommand("humphries", "emit an entangled family pair as multiset files");
  humphries_cmd->add_option("k", ha.k, "number of gadget blocks (1..6)")->required();
  humphries_cmd->add_option("r", ha.r, "list length in [2^(k-1), 2^k)")->required();
  humphries_cmd->add_option("--base", ha.base, "base tree Newick on labels 1..k");
  humphries_cmd->add_option("--out-prefix", ha.out_prefix, "output file prefix");
  humphries_cmd->add_option("--threads", ha.threads, "parallel verification width")
      ->check(CLI::Range(1u, 64u));
  humphries_cmd->add_flag("--json", opts.as_json, "emit a JSON report");
  humphries_cmd->add_flag("--timing", opts.timing, "include elapsed time");

  VerifyArgs va;
  CLI::App* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  verify_cmd
      ->add_option("suite", va.suite, "rd1 | d1 | humphries | bounds | kahle | entangled")
      ->required();
  verify_cmd->add_option("file1", va.file1, "multiset file (entangled suite)");
  verify_cmd->add_option("file2", va.file2, "multiset file (entangled suite)");
  verify_cmd->add_option("--n", va.n, "leaf count");
  verify_cmd->add_option("--r", va.r, "list length");
  verify_cmd->add_option("--k", va.k, "gadget blocks");
  verify_cmd->add_option("--m", va.m, "subset size (entangled suite)");
  verify_cmd->add_option("--trials", va.trials, "random trials");
  std::uint64_t seed_value = 0;
  auto* seed_opt = verify_cmd->add_option("--seed", seed_value, "random seed (required for bounds)");
  verify_cmd->add_option("--entry-bound", va.entry_bound, "kernel entry bound")
      ->check(CLI::Range(1, 4));
  verify_cmd->add_flag("--unrooted", va.unrooted, "use unrooted trees (bounds)");
  verify_cmd->add_option("--threads", va.threads, "parallel search width")
      ->check(CLI::Range(1u, 64u));
  verify_cmd->add_flag("--json", opts.as_json, "emit a JSON report");
  verify_cmd->add_flag("--timing", opts.timing, "include elapsed time");

  CLI11_PARSE(app, argc, argv);
  if (seed_opt->count() > 0) va.seed = seed_value;

  try {
    if (restrict_cmd->parsed()) return cmd_restrict(ra, opts);
    if (dnumber_cmd->parsed()) return cmd_dnumber(da, opts);
    if (humphries_cmd->parsed()) return cmd_humphries(ha, opts);
    if (verify_cmd->parsed()) return cmd_verify(va, opts);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitLabel;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
