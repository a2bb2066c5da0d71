// Copyright 2026 The tmlang Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TM_SIM_HPP
#define TM_SIM_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tm/core.hpp"

namespace tmlang {

struct Token {
  long id = 0;
  std::string thing;
  std::string at;  // node of the token's latest activation

  friend bool operator==(const Token&, const Token&) = default;
};

/// Branch decisions for one run. Each branch node consumes its list in
/// order, one label per visit.
struct Scenario {
  std::string name;
  std::map<std::string, std::vector<std::string>> decisions;
  std::optional<std::size_t> max_steps;  // default: 10 x node count
};

enum class Terminal { Completed, DeadEnd, StepLimit };

std::string_view to_string(Terminal terminal);

struct Step {
  std::size_t index = 0;
  std::string node;
  long token = 0;

  friend bool operator==(const Step&, const Step&) = default;
};

struct Trace {
  std::vector<Step> steps;
  std::vector<std::string> fired_events;
  std::vector<std::pair<std::string, std::string>> decisions_taken;  // (node, condition)
  std::vector<Token> tokens;
  Terminal terminal = Terminal::Completed;
  std::optional<std::string> stopped_at;  // node where a DeadEnd or StepLimit hit

  friend bool operator==(const Trace&, const Trace&) = default;
};

/// Create nodes and transfer nodes with no incoming arcs, in declaration
/// order: the places where things enter the model.
std::vector<std::string> default_seeds(const TmModel& model);

std::size_t default_max_steps(const TmModel& model);

/// Runs the model as a token machine with a FIFO worklist.
///
/// A token activating a node records a step and advances along every
/// unconditional flow (extra flows get copies) and spawns a fresh token per
/// trigger. At a branch node exactly one conditional arc is taken, chosen by
/// the scenario; a missing decision ends the run with DeadEnd, as does a
/// thing stranded at a release or transfer with nowhere to go. An event fires
/// once every node of its region has activated since it last fired.
///
/// Throws tmlang::Error for scenarios naming unknown nodes or labels and for
/// seeds that are not create or inbound transfer actions.
Trace run(const TmModel& model, const Scenario& scenario, const std::vector<std::string>& seeds);

struct EnumerateOptions {
  std::size_t trace_cap = 1024;
  std::size_t visit_bound = 4;  // per branch node, per run
};

/// One trace per distinct decision assignment reachable from `seeds`,
/// sorted by the sequence of labels taken. Throws tmlang::Error when the
/// count would exceed `trace_cap`.
std::vector<Trace> enumerate(const TmModel& model, const std::vector<std::string>& seeds,
                             std::optional<std::size_t> max_steps = std::nullopt,
                             const EnumerateOptions& options = {});

/// T1: consecutive fired events Ei, Ej where Ei -> Ej is not an edge and Ej
/// is not an entry event. T2: fired event unknown to the graph.
std::vector<Diagnostic> check_trace(const Trace& trace, const BehaviorGraph& behavior);

/// Reads `node-id = label[,label...]` lines; `#` starts a comment.
/// Throws tmlang::Error with the offending line number.
Scenario parse_scenario(std::string_view text, std::string name = "scenario");

}  // namespace tmlang

#endif  // TM_SIM_HPP
