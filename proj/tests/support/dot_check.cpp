// Copyright 2026 The tmlang Authors
// SPDX-License-Identifier: Apache-2.0

#include "dot_check.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace tmtest {
namespace {

struct Tok {
  enum Kind { Id, Quoted, Punct, End } kind;
  std::string text;
  int line;
};

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<Tok> lex(const std::string& s) {
  std::vector<Tok> out;
  int line = 1;
  std::size_t i = 0;
  auto fail = [&](const std::string& m) { throw Failure("line " + std::to_string(line) + ": " + m); };
  while (i < s.size()) {
    char c = s[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '/' && i + 1 < s.size() && s[i + 1] == '/') {
      while (i < s.size() && s[i] != '\n') ++i;
    } else if (c == '#' && (i == 0 || s[i - 1] == '\n')) {
      while (i < s.size() && s[i] != '\n') ++i;
    } else if (c == '/' && i + 1 < s.size() && s[i + 1] == '*') {
      auto end = s.find("*/", i + 2);
      if (end == std::string::npos) fail("unterminated comment");
      line += static_cast<int>(std::count(s.begin() + static_cast<long>(i), s.begin() + static_cast<long>(end), '\n'));
      i = end + 2;
    } else if (c == '"') {
      std::string text;
      int start_line = line;
      ++i;
      while (true) {
        if (i >= s.size()) fail("unterminated string");
        if (s[i] == '"') break;
        if (s[i] == '\\' && i + 1 < s.size()) {
          if (s[i + 1] == '"') {
            text += '"';
          } else {
            text += s[i];
            text += s[i + 1];
          }
          if (s[i + 1] == '\n') ++line;
          i += 2;
          continue;
        }
        if (s[i] == '\n') ++line;
        text += s[i++];
      }
      ++i;
      out.push_back({Tok::Quoted, text, start_line});
    } else if (c == '-' && i + 1 < s.size() && (s[i + 1] == '>' || s[i + 1] == '-')) {
      out.push_back({Tok::Punct, s.substr(i, 2), line});
      i += 2;
    } else if (std::string_view("{}[];,=:").find(c) != std::string_view::npos) {
      out.push_back({Tok::Punct, std::string(1, c), line});
      ++i;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
               static_cast<unsigned char>(c) >= 0x80) {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' ||
                              static_cast<unsigned char>(s[j]) >= 0x80)) {
        ++j;
      }
      out.push_back({Tok::Id, s.substr(i, j - i), line});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-') {
      std::size_t j = i + 1;
      bool dot = c == '.';
      while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || (s[j] == '.' && !dot))) {
        dot = dot || s[j] == '.';
        ++j;
      }
      std::string num = s.substr(i, j - i);
      if (num == "-" || num == "." || num == "-.") fail("malformed numeral");
      out.push_back({Tok::Id, num, line});
      i = j;
    } else {
      fail(std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, "", line});
  return out;
}

bool keyword(const Tok& t, std::string_view word) {
  if (t.kind != Tok::Id || t.text.size() != word.size()) return false;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(t.text[i])) != word[i]) return false;
  }
  return true;
}

bool any_keyword(const Tok& t) {
  for (auto w : {"node", "edge", "graph", "digraph", "subgraph", "strict"}) {
    if (keyword(t, w)) return true;
  }
  return false;
}

class Reader {
 public:
  explicit Reader(std::vector<Tok> toks) : t_(std::move(toks)) {}

  DotGraph graph() {
    DotGraph g;
    if (keyword(peek(), "strict")) ++pos_;
    if (keyword(peek(), "digraph")) {
      g.directed = true;
    } else if (keyword(peek(), "graph")) {
      g.directed = false;
    } else {
      fail("expected 'graph' or 'digraph'");
    }
    ++pos_;
    if (is_id(peek())) g.name = take().text;
    punct("{");
    g_ = &g;
    stmt_list(0);
    punct("}");
    if (peek().kind != Tok::End) fail("trailing input after the graph");
    return g;
  }

 private:
  const Tok& peek(std::size_t ahead = 0) const { return t_[std::min(pos_ + ahead, t_.size() - 1)]; }
  const Tok& take() { return t_[pos_++]; }

  [[noreturn]] void fail(const std::string& m) const {
    throw Failure("line " + std::to_string(peek().line) + ": " + m + " (at '" + peek().text + "')");
  }

  bool at(std::string_view p) const { return peek().kind == Tok::Punct && peek().text == p; }
  void punct(std::string_view p) {
    if (!at(p)) fail("expected '" + std::string(p) + "'");
    ++pos_;
  }
  bool is_id(const Tok& t) const {
    return t.kind == Tok::Quoted || (t.kind == Tok::Id && !any_keyword(t));
  }
  std::string id() {
    if (!is_id(peek())) fail("expected an ID");
    return take().text;
  }

  void stmt_list(int depth) {
    while (!at("}") && peek().kind != Tok::End) {
      stmt(depth);
      if (at(";")) ++pos_;
    }
  }

  DotAttrs attr_lists() {
    DotAttrs attrs;
    if (!at("[")) return attrs;
    while (at("[")) {
      ++pos_;
      while (!at("]")) {
        std::string k = id();
        punct("=");
        attrs[k] = id();
        if (at(",") || at(";")) ++pos_;
      }
      punct("]");
    }
    return attrs;
  }

  // Returns the node ids an edge endpoint stands for.
  std::vector<std::string> endpoint(int depth) {
    if (keyword(peek(), "subgraph") || at("{")) return subgraph(depth);
    std::string n = id();
    if (at(":")) fail("ports are not used by this emitter");
    return {n};
  }

  std::vector<std::string> subgraph(int depth) {
    if (keyword(peek(), "subgraph")) {
      ++pos_;
      std::string name = is_id(peek()) ? take().text : "";
      g_->subgraphs.push_back(name);
    }
    std::size_t first_node = g_->nodes.size();
    punct("{");
    stmt_list(depth + 1);
    punct("}");
    std::vector<std::string> ids;
    for (std::size_t i = first_node; i < g_->nodes.size(); ++i) ids.push_back(g_->nodes[i].id);
    return ids;
  }

  void stmt(int depth) {
    const Tok& t = peek();
    if (keyword(t, "graph") || keyword(t, "node") || keyword(t, "edge")) {
      ++pos_;
      if (!at("[")) fail("expected an attribute list");
      attr_lists();
      return;
    }
    if (is_id(t) && peek(1).kind == Tok::Punct && peek(1).text == "=") {
      std::string k = id();
      ++pos_;
      std::string v = id();
      if (depth == 0) g_->graph_attrs[k] = v;
      return;
    }
    std::vector<std::string> left = endpoint(depth);
    bool was_node = !(keyword(t, "subgraph") || (t.kind == Tok::Punct && t.text == "{"));
    const std::string op = g_->directed ? "->" : "--";
    if (!at("->") && !at("--")) {
      if (!was_node) return;
      g_->nodes.push_back({left.front(), attr_lists()});
      return;
    }
    std::vector<std::pair<std::string, std::string>> pairs;
    while (at("->") || at("--")) {
      if (peek().text != op) fail("edge operator '" + peek().text + "' does not match the graph type");
      ++pos_;
      std::vector<std::string> right = endpoint(depth);
      for (const auto& a : left) {
        for (const auto& b : right) pairs.emplace_back(a, b);
      }
      left = std::move(right);
    }
    DotAttrs attrs = attr_lists();
    for (auto& [a, b] : pairs) g_->edges.push_back({a, b, attrs});
  }

  std::vector<Tok> t_;
  std::size_t pos_ = 0;
  DotGraph* g_ = nullptr;
};

}  // namespace

std::optional<DotGraph> parse_dot(const std::string& text, std::string* error) {
  try {
    return Reader(lex(text)).graph();
  } catch (const Failure& f) {
    if (error) *error = f.what();
    return std::nullopt;
  }
}

}  // namespace tmtest
