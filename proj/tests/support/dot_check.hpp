// Copyright 2026 The tmlang Authors
// SPDX-License-Identifier: Apache-2.0

// A standalone reader for the Graphviz DOT language (the abstract grammar
// from the Graphviz documentation, minus ports and HTML strings). Used to
// check emitted text without a Graphviz install.

#ifndef TM_TESTS_DOT_CHECK_HPP
#define TM_TESTS_DOT_CHECK_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tmtest {

using DotAttrs = std::map<std::string, std::string>;

struct DotNode {
  std::string id;
  DotAttrs attrs;
};

struct DotEdge {
  std::string src;
  std::string dst;
  DotAttrs attrs;
};

struct DotGraph {
  bool directed = true;
  std::string name;
  std::vector<DotNode> nodes;  // explicit node statements, in order
  std::vector<DotEdge> edges;  // one per edge operator, in order
  std::vector<std::string> subgraphs;
  DotAttrs graph_attrs;  // top-level `ID = ID` statements
};

/// Parses `text`; on failure returns nullopt and sets `error` to
/// "line N: message".
std::optional<DotGraph> parse_dot(const std::string& text, std::string* error = nullptr);

}  // namespace tmtest

#endif  // TM_TESTS_DOT_CHECK_HPP
