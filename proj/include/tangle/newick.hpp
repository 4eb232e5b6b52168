#pragma once

// Newick text <-> canonical topologies.
//
// Grammar (no branch lengths, no internal labels):
//   tree    := element ';'
//   element := '(' element (',' element)+ ')' | name
//   name    := [A-Za-z0-9_]+
// Whitespace between tokens is skipped. Rooted mode demands exactly two
// children per internal node; unrooted mode demands three at the top level
// and two below. Emission is bit-exact: no whitespace, ';' terminator.

#include <charconv>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tangle/tree.hpp"

namespace tangle {

struct ParseError : std::runtime_error {
  std::size_t position;
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
};

// Interned label <-> id map. Ids are the numeric values when every label is a
// canonical decimal numeral, otherwise first-appearance order starting at 0.
class LabelTable {
 public:
  LabelTable() = default;

  static LabelTable from_appearance(const std::vector<std::string>& labels) {
    LabelTable t;
    bool numeric = !labels.empty();
    std::vector<Leaf> values(labels.size());
    for (std::size_t i = 0; i < labels.size() && numeric; ++i) {
      numeric = parse_decimal(labels[i], values[i]);
    }
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const std::string& name = labels[i];
      if (t.ids_.count(name)) continue;
      Leaf id = numeric ? values[i] : static_cast<Leaf>(t.ids_.size());
      t.ids_.emplace(name, id);
      t.names_.emplace(id, name);
    }
    t.numeric_ = numeric;
    return t;
  }

  bool has(const std::string& name) const { return ids_.count(name) != 0; }

  Leaf id_of(const std::string& name) const {
    auto it = ids_.find(name);
    detail::require(it != ids_.end(), "unknown leaf label");
    return it->second;
  }

  const std::string& name_of(Leaf id) const {
    auto it = names_.find(id);
    detail::require(it != names_.end(), "unknown leaf id");
    return it->second;
  }

  bool numeric() const { return numeric_; }
  std::size_t size() const { return ids_.size(); }

 private:
  static bool parse_decimal(const std::string& s, Leaf& out) {
    if (s.empty() || (s.size() > 1 && s[0] == '0')) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size() && out >= 0;
  }

  std::map<Leaf, std::string> names_;
  std::unordered_map<std::string, Leaf> ids_;
  bool numeric_ = false;
};

namespace detail {

struct NewickAst {
  std::string label;  // leaves only
  std::vector<NewickAst> children;
  std::size_t pos = 0;
  bool is_leaf() const { return children.empty(); }
};

class NewickParser {
 public:
  explicit NewickParser(std::string_view text) : text_(text) {}

  NewickAst parse() {
    skip_ws();
    NewickAst root = element();
    skip_ws();
    if (at_end() || text_[pos_] != ';') throw ParseError("expected ';'", pos_);
    ++pos_;
    skip_ws();
    if (!at_end()) throw ParseError("trailing characters after ';'", pos_);
    return root;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  void skip_ws() {
    while (!at_end() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r' ||
                         text_[pos_] == '\n'))
      ++pos_;
  }
  static bool name_char(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
           c == '_';
  }

  NewickAst element() {
    skip_ws();
    if (at_end()) throw ParseError("unexpected end of input", pos_);
    NewickAst node;
    node.pos = pos_;
    if (text_[pos_] == '(') {
      ++pos_;
      node.children.push_back(element());
      skip_ws();
      while (!at_end() && text_[pos_] == ',') {
        ++pos_;
        node.children.push_back(element());
        skip_ws();
      }
      if (at_end() || text_[pos_] != ')') throw ParseError("expected ')'", pos_);
      if (node.children.size() < 2) throw ParseError("internal node needs children", node.pos);
      ++pos_;
      return node;
    }
    if (!name_char(text_[pos_])) throw ParseError("expected leaf name or '('", pos_);
    while (!at_end() && name_char(text_[pos_])) node.label.push_back(text_[pos_++]);
    return node;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline NewickAst parse_newick_ast(std::string_view text) { return NewickParser(text).parse(); }

inline void collect_labels(const NewickAst& ast, std::vector<std::string>& out) {
  if (ast.is_leaf()) {
    out.push_back(ast.label);
    return;
  }
  for (const NewickAst& c : ast.children) collect_labels(c, out);
}

// Duplicate leaf labels are rejected per tree, before interning.
inline void check_duplicates(const NewickAst& ast) {
  std::vector<std::string> labels;
  collect_labels(ast, labels);
  std::sort(labels.begin(), labels.end());
  for (std::size_t i = 1; i < labels.size(); ++i)
    if (labels[i - 1] == labels[i])
      throw ParseError("duplicate leaf label '" + labels[i] + "'", ast.pos);
}

inline RootedTopology rooted_from_ast(const NewickAst& ast, const LabelTable& table) {
  if (ast.is_leaf()) return RootedTopology::leaf(table.id_of(ast.label));
  if (ast.children.size() != 2)
    throw ParseError("rooted trees are binary: every internal node needs exactly two children",
                     ast.pos);
  return RootedTopology::join(rooted_from_ast(ast.children[0], table),
                              rooted_from_ast(ast.children[1], table));
}

inline UnrootedTopology unrooted_from_ast(const NewickAst& ast, const LabelTable& table) {
  if (ast.is_leaf() || ast.children.size() != 3)
    throw ParseError("unrooted trees need exactly three children at the top level", ast.pos);
  RootedTopology a = rooted_from_ast(ast.children[0], table);
  RootedTopology b = rooted_from_ast(ast.children[1], table);
  RootedTopology c = rooted_from_ast(ast.children[2], table);
  TreeGraph g;
  int top = g.add();
  std::size_t p = 0;
  int na = graph_add_rooted(g, a.encoding(), p);
  p = 0;
  int nb = graph_add_rooted(g, b.encoding(), p);
  p = 0;
  int nc = graph_add_rooted(g, c.encoding(), p);
  g.link(top, na);
  g.link(top, nb);
  g.link(top, nc);
  return graph_read_unrooted(g);
}

inline void emit_label(std::string& out, Leaf id, const LabelTable* table) {
  if (table)
    out += table->name_of(id);
  else
    out += std::to_string(id);
}

inline void emit_rooted_rec(const Enc& enc, std::size_t& pos, const LabelTable* table,
                            std::string& out) {
  if (enc[pos] != k_node) {
    emit_label(out, enc[pos], table);
    ++pos;
    return;
  }
  ++pos;
  out += '(';
  emit_rooted_rec(enc, pos, table, out);
  out += ',';
  emit_rooted_rec(enc, pos, table, out);
  out += ')';
}

}  // namespace detail

inline RootedTopology parse_rooted_newick(std::string_view text, LabelTable* table_out = nullptr) {
  detail::NewickAst ast = detail::parse_newick_ast(text);
  detail::check_duplicates(ast);
  if (ast.is_leaf()) throw ParseError("rooted trees need at least two leaves", ast.pos);
  std::vector<std::string> labels;
  detail::collect_labels(ast, labels);
  LabelTable table = LabelTable::from_appearance(labels);
  RootedTopology t = detail::rooted_from_ast(ast, table);
  if (table_out) *table_out = std::move(table);
  return t;
}

inline UnrootedTopology parse_unrooted_newick(std::string_view text,
                                              LabelTable* table_out = nullptr) {
  detail::NewickAst ast = detail::parse_newick_ast(text);
  detail::check_duplicates(ast);
  std::vector<std::string> labels;
  detail::collect_labels(ast, labels);
  LabelTable table = LabelTable::from_appearance(labels);
  UnrootedTopology t = detail::unrooted_from_ast(ast, table);
  if (table_out) *table_out = std::move(table);
  return t;
}

inline std::string emit_newick(const RootedTopology& t, const LabelTable* table = nullptr) {
  detail::require(!t.empty(), "cannot emit an empty topology");
  std::string out;
  std::size_t pos = 0;
  detail::emit_rooted_rec(t.encoding(), pos, table, out);
  out += ';';
  return out;
}

// Canonical unrooted emission: "(handle,left,right);" where left/right are
// the child subtrees of the stored rooted remainder.
inline std::string emit_newick(const UnrootedTopology& t, const LabelTable* table = nullptr) {
  detail::require(!t.empty(), "cannot emit an empty topology");
  std::string out = "(";
  detail::emit_label(out, t.handle(), table);
  auto [l, r] = t.rest().children();
  out += ',';
  std::size_t pos = 0;
  detail::emit_rooted_rec(l.encoding(), pos, table, out);
  out += ',';
  pos = 0;
  detail::emit_rooted_rec(r.encoding(), pos, table, out);
  out += ");";
  return out;
}

}  // namespace tangle
