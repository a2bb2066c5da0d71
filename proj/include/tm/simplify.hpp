// Copyright 2026 The tmlang Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TM_SIMPLIFY_HPP
#define TM_SIMPLIFY_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tm/core.hpp"

namespace tmlang {

enum class ArcStyle { Solid, Dashed };

struct ViewArc {
  std::string src;  // node ids
  std::string dst;
  std::string src_machine;
  std::string dst_machine;
  ArcStyle style = ArcStyle::Solid;
  std::optional<std::string> condition;
  bool machine_level = false;  // level 3: drawn between machine boxes

  friend bool operator==(const ViewArc&, const ViewArc&) = default;
  friend auto operator<=>(const ViewArc&, const ViewArc&) = default;
};

/// A display-only projection of the static model.
struct SimplifiedView {
  int level = 1;
  std::vector<Machine> machines;  // the full machine tree
  std::vector<ActionNode> nodes;
  std::vector<ViewArc> arcs;      // sorted
  bool node_labels = true;
  std::vector<Diagnostic> warnings;  // S1: chains dropped for lack of a surviving end
};

/// Level 1 drops release/transfer/receive, level 2 also drops create, level
/// 3 draws the level-2 graph as plain machine boxes with solid arrows.
///
/// Each maximal chain of dropped actions is replaced by one arc per
/// (surviving ancestor, surviving descendant) pair. The replacement is
/// dashed if any arc of the chain was a trigger and inherits the chain's
/// conditions. Throws tmlang::Error for a level outside 1..3.
SimplifiedView simplify(const TmModel& model, int level);

/// machine_reachability() over the view's node graph.
std::set<MachinePair> view_reachability(const SimplifiedView& view);

}  // namespace tmlang

#endif  // TM_SIMPLIFY_HPP
