// Copyright 2026 The tmlang Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TM_CORE_HPP
#define TM_CORE_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tmlang {

/// The five generic actions. There is no sixth.
enum class ActionKind { Create, Process, Release, Transfer, Receive };

inline constexpr ActionKind kAllKinds[] = {ActionKind::Create, ActionKind::Process,
                                           ActionKind::Release, ActionKind::Transfer,
                                           ActionKind::Receive};

std::string_view to_string(ActionKind kind);
std::optional<ActionKind> parse_kind(std::string_view word);

/// Solid arrows are flows, dashed arrows are triggers.
enum class ArcKind { Flow, Trigger };

std::string_view to_string(ArcKind kind);

struct Machine {
  std::string id;  // path, e.g. "Customer.Order"
  std::string name;
  std::optional<std::string> parent;
  std::vector<std::string> children;

  friend bool operator==(const Machine&, const Machine&) = default;
};

struct ActionNode {
  std::string id;  // "<machine id>.<local name>"
  std::string machine;
  ActionKind kind = ActionKind::Create;
  std::string thing;
  std::optional<std::string> label;

  friend bool operator==(const ActionNode&, const ActionNode&) = default;
};

struct Arc {
  std::string id;  // "<src>-><dst>"
  ArcKind kind = ArcKind::Flow;
  std::string src;
  std::string dst;
  std::optional<std::string> condition;

  friend bool operator==(const Arc&, const Arc&) = default;
};

using FlowArc = Arc;
using TriggerArc = Arc;

std::string arc_id(std::string_view src, std::string_view dst);

/// Default local name of an action: "<kind>_<thing>".
std::string default_local_name(ActionKind kind, std::string_view thing);

/// An event is a region of the static model plus an optional ordering hint.
struct EventDef {
  std::string name;
  std::vector<std::string> region_nodes;
  std::vector<std::string> region_arcs;
  std::optional<long> order;

  friend bool operator==(const EventDef&, const EventDef&) = default;
};

struct BehaviorEdge {
  std::string from;
  std::string to;
  std::optional<std::string> condition;

  friend bool operator==(const BehaviorEdge&, const BehaviorEdge&) = default;
  friend auto operator<=>(const BehaviorEdge&, const BehaviorEdge&) = default;
};

/// Chronology of events: a directed graph over event names.
struct BehaviorGraph {
  std::vector<std::string> nodes;
  std::vector<BehaviorEdge> edges;  // sorted by (from, to)
  std::set<std::string> entry;      // events without in-edges

  bool has_edge(std::string_view from, std::string_view to) const;
  const BehaviorEdge* find_edge(std::string_view from, std::string_view to) const;

  /// Fills `entry` and sorts edges. Call after populating nodes/edges.
  void finalize();

  friend bool operator==(const BehaviorGraph&, const BehaviorGraph&) = default;
};

struct TmModel {
  std::string name;
  std::vector<Machine> machines;
  std::vector<ActionNode> nodes;
  std::vector<Arc> flow_arcs;
  std::vector<Arc> trigger_arcs;
  std::vector<EventDef> events;
  std::optional<BehaviorGraph> declared_behavior;

  const ActionNode* find_node(std::string_view id) const;
  const Machine* find_machine(std::string_view id) const;
  const EventDef* find_event(std::string_view name) const;

  /// All arcs, flows first, each group in declaration order.
  std::vector<Arc> all_arcs() const;

  friend bool operator==(const TmModel&, const TmModel&) = default;
};

/// Equality that ignores declaration order of machines, nodes, arcs, and
/// events (machine child order still matters).
bool structurally_equal(const TmModel& a, const TmModel& b);

/// Reference-level problems (dangling ids, duplicate ids, self arcs). The
/// parser never produces a model with any of these.
std::vector<std::string> structural_problems(const TmModel& model);

enum class Severity { Error, Warning };

std::string_view to_string(Severity severity);

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;
  std::string message;
  std::vector<std::string> ids;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// Orders by (severity, code, first id, message, ids).
void sort_diagnostics(std::vector<Diagnostic>& diagnostics);
bool has_errors(const std::vector<Diagnostic>& diagnostics);
std::size_t count(const std::vector<Diagnostic>& diagnostics, Severity severity);

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lookup tables over an immutable model. Holds pointers into `model`, which
/// must outlive the index.
class ModelIndex {
 public:
  explicit ModelIndex(const TmModel& model);

  const TmModel& model() const { return *model_; }
  const ActionNode& node(std::string_view id) const;
  bool has_node(std::string_view id) const;
  const std::vector<const Arc*>& out_arcs(std::string_view node_id) const;
  const std::vector<const Arc*>& in_arcs(std::string_view node_id) const;
  const std::vector<const ActionNode*>& nodes_of(std::string_view machine_id) const;

  /// True when `ancestor` is a strict ancestor of `machine`.
  bool is_ancestor(std::string_view ancestor, std::string_view machine) const;
  /// Same machine, or one nests the other.
  bool same_family(std::string_view a, std::string_view b) const;

 private:
  const TmModel* model_;
  std::unordered_map<std::string, const ActionNode*> nodes_;
  std::unordered_map<std::string, std::vector<const Arc*>> out_;
  std::unordered_map<std::string, std::vector<const Arc*>> in_;
  std::unordered_map<std::string, std::vector<const ActionNode*>> by_machine_;
  std::unordered_map<std::string, std::optional<std::string>> parent_;
};

/// A group of mutually exclusive conditional arcs leaving one node.
struct BranchGroup {
  std::string src;
  std::vector<Arc> arcs;  // sorted by condition, then arc id

  friend bool operator==(const BranchGroup&, const BranchGroup&) = default;
};

/// Structural legality rules R1-R6 plus the transfer-port warning (P1).
std::vector<Diagnostic> validate_model(const TmModel& model);

/// Conditional arcs partitioned by source node. Groups with a single
/// conditional arc are not groups: that arc behaves as unconditional.
std::vector<BranchGroup> branch_groups(const TmModel& model);

using MachinePair = std::pair<std::string, std::string>;

/// (A, B) with A != B iff a node of A reaches a node of B over one or more
/// arcs; (A, A) iff some node of A lies on a cycle.
std::set<MachinePair> machine_reachability(const TmModel& model);

/// Same relation over an arbitrary node graph. `machine_of` maps each node
/// id to its machine; edges are (src, dst) node ids.
std::set<MachinePair> machine_reachability(
    const std::map<std::string, std::string>& machine_of,
    const std::vector<std::pair<std::string, std::string>>& edges);

}  // namespace tmlang

#endif  // TM_CORE_HPP
