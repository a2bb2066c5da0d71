// Copyright 2026 The tmlang Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TM_RENDER_HPP
#define TM_RENDER_HPP

#include <optional>
#include <string>
#include <string_view>

#include "tm/core.hpp"

namespace tmlang {

enum class View { Static, Events, Behavior, Simplified };
enum class Format { Dot, Svg };
enum class RankDir { LR, TB };

std::string_view to_string(View view);
std::optional<View> parse_view(std::string_view name);

struct RenderOptions {
  View view = View::Static;
  std::optional<int> level;  // only with View::Simplified
  Format format = Format::Dot;
  bool show_conditions = true;
  RankDir rankdir = RankDir::LR;
  bool declared_behavior = false;  // behavior view: declared block instead of derived graph
};

/// Deterministic DOT text. Machines become nested clusters, actions boxes
/// labelled "<kind>\n<thing>", flows solid edges and triggers dashed ones.
/// Nodes and edges are emitted in lexicographic id order.
///
/// Throws tmlang::Error naming the fields of an unsupported combination.
std::string to_dot(const TmModel& model, const RenderOptions& opts);

/// "<model>.<view>.dot", with "simplified-L<n>" for simplified views.
std::string output_name(const TmModel& model, const RenderOptions& opts);

/// Runs an external `dot -Tsvg`. Throws tmlang::Error if it is unavailable
/// or fails.
std::string dot_to_svg(const std::string& dot);

}  // namespace tmlang

#endif  // TM_RENDER_HPP
