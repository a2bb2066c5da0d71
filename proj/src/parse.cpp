// Copyright 2026 The tmlang Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <charconv>
#include <set>
#include <unordered_map>

#include "lexer.hpp"
#include "tm/parse.hpp"

namespace tmlang {
namespace {

using detail::Tok;
using detail::Token;

struct Ref {
  std::string text;
  SourceSpan span;
};

struct RawArc {
  ArcKind kind;
  Ref src;
  Ref dst;
  std::optional<std::string> condition;
};

struct RawEvent {
  std::string name;
  SourceSpan span;
  std::optional<long> order;
  std::vector<Ref> nodes;
  std::vector<std::pair<Ref, Ref>> arcs;
};

struct RawEdge {
  Ref from;
  Ref to;
};

struct SyntaxError {};

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::string_view file)
      : tokens_(std::move(tokens)), file_(file) {}

  ParseResult run() {
    ParseResult result;
    try {
      parse_model();
    } catch (const SyntaxError&) {
      result.errors = std::move(errors_);
      return result;
    }
    resolve();
    result.spans = std::move(spans_);
    result.errors = std::move(errors_);
    if (result.errors.empty()) result.model = std::move(model_);
    return result;
  }

 private:
  // -- token helpers --------------------------------------------------------

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }

  SourceSpan span_of(const Token& t) const { return SourceSpan{file_, t.line, t.column, t.length}; }

  bool at_word(std::string_view word) const {
    return peek().kind == Tok::Ident && peek().text == word;
  }

  [[noreturn]] void syntax_error(std::string message, std::vector<std::string> expected) {
    const Token& t = peek();
    if (t.kind == Tok::End) {
      message += " (found end of input)";
    } else {
      message += " (found '" + t.text + "')";
    }
    errors_.push_back(ParseError{span_of(t), std::move(message), std::move(expected)});
    throw SyntaxError{};
  }

  Token expect(Tok kind, std::string_view what = {}) {
    if (peek().kind != kind) {
      std::string desc(what.empty() ? detail::describe(kind) : what);
      syntax_error("expected " + desc, {desc});
    }
    return tokens_[pos_++];
  }

  Token expect_word(std::string_view word) {
    if (!at_word(word)) {
      std::string desc = "'" + std::string(word) + "'";
      syntax_error("expected " + desc, {desc});
    }
    return tokens_[pos_++];
  }

  void semantic_error(const SourceSpan& span, std::string message) {
    errors_.push_back(ParseError{span, std::move(message), {}});
  }

  // -- grammar --------------------------------------------------------------

  void parse_model() {
    expect_word("model");
    model_.name = expect(Tok::Ident, "model name").text;
    expect(Tok::LBrace);
    while (peek().kind != Tok::RBrace) {
      if (at_word("machine")) {
        parse_machine(std::nullopt);
      } else if (at_word("flow") || at_word("trigger")) {
        parse_arc();
      } else if (at_word("event")) {
        parse_event();
      } else if (at_word("behavior")) {
        parse_behavior();
      } else {
        syntax_error("expected a model item",
                     {"'machine'", "'flow'", "'trigger'", "'event'", "'behavior'", "'}'"});
      }
    }
    expect(Tok::RBrace);
    expect(Tok::End);
  }

  void parse_machine(const std::optional<std::string>& parent) {
    expect_word("machine");
    Token name = expect(Tok::Ident, "machine name");
    std::string id = parent ? *parent + "." + name.text : name.text;

    if (!machine_ids_.insert(id).second) {
      semantic_error(span_of(name), "duplicate machine id '" + id + "'");
    } else {
      model_.machines.push_back(Machine{id, name.text, parent, {}});
      spans_["machine:" + id] = span_of(name);
      if (parent) {
        for (auto& m : model_.machines) {
          if (m.id == *parent) m.children.push_back(id);
        }
      }
    }

    expect(Tok::LBrace);
    while (peek().kind != Tok::RBrace) {
      if (at_word("machine")) {
        parse_machine(id);
        continue;
      }
      if (peek().kind == Tok::Ident) {
        if (auto kind = parse_kind(peek().text)) {
          parse_action(id, *kind);
          continue;
        }
      }
      syntax_error("expected an action or a nested machine",
                   {"'create'", "'process'", "'release'", "'transfer'", "'receive'", "'machine'",
                    "'}'"});
    }
    expect(Tok::RBrace);
  }

  void parse_action(const std::string& machine, ActionKind kind) {
    Token kind_tok = tokens_[pos_++];
    Token thing = expect(Tok::Ident, "thing name");
    std::optional<std::string> alias;
    Token name_tok = thing;
    if (at_word("as")) {
      ++pos_;
      name_tok = expect(Tok::Ident, "action name");
      alias = name_tok.text;
    }
    expect(Tok::Semi);

    std::string local = alias ? *alias : default_local_name(kind, thing.text);
    std::string id = machine + "." + local;
    SourceSpan span = span_of(kind_tok);
    span.length = name_tok.column + name_tok.length - kind_tok.column;
    if (name_tok.line != kind_tok.line) span.length = kind_tok.length;

    if (!node_ids_.insert(id).second) {
      semantic_error(span, "duplicate node id '" + id + "'" +
                               (alias ? "" : "; use 'as' to give the action a distinct name"));
      return;
    }
    model_.nodes.push_back(ActionNode{id, machine, kind, thing.text, alias});
    spans_["node:" + id] = span;
  }

  Ref parse_ref() {
    Token first = expect(Tok::Ident, "node reference");
    Ref ref{first.text, span_of(first)};
    while (peek().kind == Tok::Dot) {
      ++pos_;
      Token part = expect(Tok::Ident, "identifier after '.'");
      ref.text += "." + part.text;
      if (part.line == first.line) ref.span.length = part.column + part.length - first.column;
    }
    return ref;
  }

  void parse_arc() {
    Token kw = tokens_[pos_++];
    RawArc arc{kw.text == "flow" ? ArcKind::Flow : ArcKind::Trigger, parse_ref(), {}, {}};
    expect(Tok::Arrow);
    arc.dst = parse_ref();
    if (at_word("on")) {
      ++pos_;
      arc.condition = expect(Tok::String, "condition string").text;
    }
    expect(Tok::Semi);
    arcs_.push_back(std::move(arc));
  }

  void parse_event() {
    expect_word("event");
    Token name = expect(Tok::Ident, "event name");
    RawEvent ev;
    ev.name = name.text;
    ev.span = span_of(name);
    if (at_word("order")) {
      ++pos_;
      Token num = expect(Tok::Int, "integer order");
      long value = 0;
      auto [ptr, ec] = std::from_chars(num.text.data(), num.text.data() + num.text.size(), value);
      if (ec != std::errc() || ptr != num.text.data() + num.text.size()) {
        semantic_error(span_of(num), "order value out of range");
      }
      ev.order = value;
    }
    expect(Tok::LBrace);
    expect_word("nodes");
    expect(Tok::Colon);
    ev.nodes.push_back(parse_ref());
    while (peek().kind == Tok::Comma) {
      ++pos_;
      ev.nodes.push_back(parse_ref());
    }
    expect(Tok::Semi);
    if (at_word("arcs")) {
      ++pos_;
      expect(Tok::Colon);
      do {
        if (peek().kind == Tok::Comma) ++pos_;
        Ref src = parse_ref();
        expect(Tok::Arrow);
        Ref dst = parse_ref();
        ev.arcs.emplace_back(std::move(src), std::move(dst));
      } while (peek().kind == Tok::Comma);
      expect(Tok::Semi);
    }
    expect(Tok::RBrace);
    events_.push_back(std::move(ev));
  }

  void parse_behavior() {
    Token kw = expect_word("behavior");
    if (behavior_seen_) semantic_error(span_of(kw), "a model has at most one behavior block");
    behavior_seen_ = true;
    expect(Tok::LBrace);
    while (peek().kind != Tok::RBrace) {
      Token from = expect(Tok::Ident, "event name");
      expect(Tok::Arrow);
      Token to = expect(Tok::Ident, "event name");
      expect(Tok::Semi);
      edges_.push_back(RawEdge{{from.text, span_of(from)}, {to.text, span_of(to)}});
    }
    expect(Tok::RBrace);
  }

  // -- resolution -----------------------------------------------------------

  std::optional<std::string> resolve_ref(const Ref& ref) {
    if (node_ids_.count(ref.text)) return ref.text;
    std::vector<std::string> matches;
    std::string suffix = "." + ref.text;
    for (const auto& n : model_.nodes) {
      if (n.id.size() > suffix.size() &&
          n.id.compare(n.id.size() - suffix.size(), suffix.size(), suffix) == 0) {
        matches.push_back(n.id);
      }
    }
    if (matches.size() == 1) return matches.front();
    if (matches.empty()) {
      semantic_error(ref.span, "unresolved reference '" + ref.text + "'");
    } else {
      std::string list;
      for (const auto& m : matches) list += (list.empty() ? "" : ", ") + m;
      semantic_error(ref.span, "ambiguous reference '" + ref.text + "' (matches " + list + ")");
    }
    return std::nullopt;
  }

  void resolve() {
    std::set<std::string> arc_ids;
    for (const auto& raw : arcs_) {
      auto src = resolve_ref(raw.src);
      auto dst = resolve_ref(raw.dst);
      if (!src || !dst) continue;
      SourceSpan span = raw.src.span;
      if (*src == *dst) {
        semantic_error(span, "arc from '" + *src + "' to itself");
        continue;
      }
      Arc arc{arc_id(*src, *dst), raw.kind, *src, *dst, raw.condition};
      if (!arc_ids.insert(arc.id).second) {
        semantic_error(span, "duplicate arc id '" + arc.id + "'");
        continue;
      }
      spans_["arc:" + arc.id] = span;
      (raw.kind == ArcKind::Flow ? model_.flow_arcs : model_.trigger_arcs).push_back(std::move(arc));
    }

    for (const auto& raw : events_) {
      EventDef ev;
      ev.name = raw.name;
      ev.order = raw.order;
      for (const auto& r : raw.nodes) {
        if (auto id = resolve_ref(r)) ev.region_nodes.push_back(*id);
      }
      for (const auto& [s, d] : raw.arcs) {
        auto src = resolve_ref(s);
        auto dst = resolve_ref(d);
        if (!src || !dst) continue;
        std::string id = arc_id(*src, *dst);
        if (!arc_ids.count(id)) {
          semantic_error(s.span, "event '" + raw.name + "' names unknown arc '" + id + "'");
          continue;
        }
        ev.region_arcs.push_back(id);
      }
      spans_.emplace("event:" + raw.name, raw.span);
      model_.events.push_back(std::move(ev));
    }

    if (behavior_seen_) {
      BehaviorGraph g;
      for (const auto& e : model_.events) {
        if (std::find(g.nodes.begin(), g.nodes.end(), e.name) == g.nodes.end()) g.nodes.push_back(e.name);
      }
      std::set<std::pair<std::string, std::string>> seen;
      for (const auto& raw : edges_) {
        bool ok = true;
        for (const Ref* r : {&raw.from, &raw.to}) {
          if (!model_.find_event(r->text)) {
            semantic_error(r->span, "behavior names undeclared event '" + r->text + "'");
            ok = false;
          }
        }
        if (!ok) continue;
        if (raw.from.text == raw.to.text) {
          semantic_error(raw.from.span, "event '" + raw.from.text + "' cannot precede itself");
          continue;
        }
        if (!seen.emplace(raw.from.text, raw.to.text).second) {
          semantic_error(raw.from.span,
                         "duplicate behavior edge " + raw.from.text + " -> " + raw.to.text);
          continue;
        }
        g.edges.push_back(BehaviorEdge{raw.from.text, raw.to.text, std::nullopt});
      }
      g.finalize();
      model_.declared_behavior = std::move(g);
    }
  }

  std::vector<Token> tokens_;
  std::string file_;
  std::size_t pos_ = 0;

  TmModel model_;
  SourceMap spans_;
  std::vector<ParseError> errors_;
  std::set<std::string> machine_ids_;
  std::set<std::string> node_ids_;
  std::vector<RawArc> arcs_;
  std::vector<RawEvent> events_;
  std::vector<RawEdge> edges_;
  bool behavior_seen_ = false;
};

}  // namespace

ParseResult parse(std::string_view text, std::string_view file) {
  auto lexed = detail::lex(text, file);
  if (lexed.error) {
    ParseResult result;
    result.errors.push_back(*lexed.error);
    return result;
  }
  return Parser(std::move(lexed.tokens), file).run();
}

std::string resolve_node_ref(const TmModel& model, std::string_view ref) {
  if (model.find_node(ref)) return std::string(ref);
  std::string suffix = "." + std::string(ref);
  std::vector<std::string> matches;
  for (const auto& n : model.nodes) {
    if (n.id.size() > suffix.size() &&
        n.id.compare(n.id.size() - suffix.size(), suffix.size(), suffix) == 0) {
      matches.push_back(n.id);
    }
  }
  if (matches.size() == 1) return matches.front();
  if (matches.empty()) throw Error("unknown node '" + std::string(ref) + "'");
  throw Error("ambiguous node reference '" + std::string(ref) + "'");
}

std::string format_error(const ParseError& error) {
  std::string out = error.span.file + ":" + std::to_string(error.span.line) + ":" +
                    std::to_string(error.span.column) + ": error: " + error.message;
  return out;
}

}  // namespace tmlang
