// Copyright 2026 The tmlang Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TM_PARSE_HPP
#define TM_PARSE_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tm/core.hpp"

namespace tmlang {

struct SourceSpan {
  std::string file;
  int line = 1;    // 1-based
  int column = 1;  // 1-based
  int length = 0;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

struct ParseError {
  SourceSpan span;
  std::string message;
  std::vector<std::string> expected;
};

/// Where each machine, node, arc and event was declared.
using SourceMap = std::map<std::string, SourceSpan>;

struct ParseResult {
  std::optional<TmModel> model;
  SourceMap spans;
  std::vector<ParseError> errors;

  bool ok() const { return model.has_value() && errors.empty(); }
};

/// Parses `.tm` source into a resolved (not yet validated) model.
///
///   model    := "model" IDENT "{" item* "}"
///   item     := machine | arc | event | behavior
///   machine  := "machine" IDENT "{" (machine | action)* "}"
///   action   := KIND IDENT ("as" IDENT)? ";"
///   arc      := ("flow" | "trigger") REF "->" REF ("on" STRING)? ";"
///   event    := "event" IDENT ("order" INT)? "{" "nodes:" REF ("," REF)* ";"
///               ("arcs:" ARCREF ("," ARCREF)* ";")? "}"
///   behavior := "behavior" "{" (IDENT "->" IDENT ";")* "}"
///   ARCREF   := REF "->" REF
///
/// A REF is a dotted node path. It may be abbreviated to any suffix that
/// names exactly one node, down to the bare local name.
ParseResult parse(std::string_view text, std::string_view file = "<input>");

/// Canonical source text; parse(print(m)) is structurally equal to m.
std::string print(const TmModel& model);

/// Resolves a (possibly abbreviated) node reference. Throws tmlang::Error
/// when the reference is unknown or ambiguous.
std::string resolve_node_ref(const TmModel& model, std::string_view ref);

std::string format_error(const ParseError& error);

}  // namespace tmlang

#endif  // TM_PARSE_HPP
