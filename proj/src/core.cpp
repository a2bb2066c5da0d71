// Copyright 2026 The tmlang Authors
// SPDX-License-Identifier: Apache-2.0

#include "tm/core.hpp"

#include <algorithm>
#include <deque>
#include <tuple>
#include <unordered_set>

namespace tmlang {

std::string_view to_string(ActionKind kind) {
  switch (kind) {
    case ActionKind::Create: return "create";
    case ActionKind::Process: return "process";
    case ActionKind::Release: return "release";
    case ActionKind::Transfer: return "transfer";
    case ActionKind::Receive: return "receive";
  }
  return "?";
}

std::optional<ActionKind> parse_kind(std::string_view word) {
  for (ActionKind kind : kAllKinds) {
    if (to_string(kind) == word) return kind;
  }
  return std::nullopt;
}

std::string_view to_string(ArcKind kind) {
  return kind == ArcKind::Flow ? "flow" : "trigger";
}

std::string_view to_string(Severity severity) {
  return severity == Severity::Error ? "error" : "warning";
}

std::string arc_id(std::string_view src, std::string_view dst) {
  std::string id(src);
  id += "->";
  id += dst;
  return id;
}

std::string default_local_name(ActionKind kind, std::string_view thing) {
  std::string name(to_string(kind));
  name += '_';
  name += thing;
  return name;
}

// ---------------------------------------------------------------------------
// BehaviorGraph

const BehaviorEdge* BehaviorGraph::find_edge(std::string_view from, std::string_view to) const {
  for (const auto& e : edges) {
    if (e.from == from && e.to == to) return &e;
  }
  return nullptr;
}

bool BehaviorGraph::has_edge(std::string_view from, std::string_view to) const {
  return find_edge(from, to) != nullptr;
}

void BehaviorGraph::finalize() {
  std::sort(edges.begin(), edges.end());
  entry.clear();
  std::set<std::string> has_in;
  for (const auto& e : edges) has_in.insert(e.to);
  for (const auto& n : nodes) {
    if (!has_in.count(n)) entry.insert(n);
  }
}

// ---------------------------------------------------------------------------
// TmModel

const ActionNode* TmModel::find_node(std::string_view id) const {
  for (const auto& n : nodes) {
    if (n.id == id) return &n;
  }
  return nullptr;
}

const Machine* TmModel::find_machine(std::string_view id) const {
  for (const auto& m : machines) {
    if (m.id == id) return &m;
  }
  return nullptr;
}

const EventDef* TmModel::find_event(std::string_view name) const {
  for (const auto& e : events) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

std::vector<Arc> TmModel::all_arcs() const {
  std::vector<Arc> arcs = flow_arcs;
  arcs.insert(arcs.end(), trigger_arcs.begin(), trigger_arcs.end());
  return arcs;
}

namespace {

template <typename T, typename Key>
std::vector<T> sorted_by(std::vector<T> items, Key key) {
  std::sort(items.begin(), items.end(),
            [&](const T& a, const T& b) { return key(a) < key(b); });
  return items;
}

EventDef canonical_event(EventDef e) {
  std::sort(e.region_nodes.begin(), e.region_nodes.end());
  std::sort(e.region_arcs.begin(), e.region_arcs.end());
  return e;
}

}  // namespace

bool structurally_equal(const TmModel& a, const TmModel& b) {
  if (a.name != b.name) return false;
  auto by_id = [](const auto& x) { return x.id; };
  if (sorted_by(a.machines, by_id) != sorted_by(b.machines, by_id)) return false;
  if (sorted_by(a.nodes, by_id) != sorted_by(b.nodes, by_id)) return false;
  if (sorted_by(a.flow_arcs, by_id) != sorted_by(b.flow_arcs, by_id)) return false;
  if (sorted_by(a.trigger_arcs, by_id) != sorted_by(b.trigger_arcs, by_id)) return false;

  auto events = [](const TmModel& m) {
    std::vector<EventDef> out;
    for (const auto& e : m.events) out.push_back(canonical_event(e));
    std::sort(out.begin(), out.end(), [](const EventDef& x, const EventDef& y) {
      return std::tie(x.name, x.region_nodes) < std::tie(y.name, y.region_nodes);
    });
    return out;
  };
  if (events(a) != events(b)) return false;

  if (a.declared_behavior.has_value() != b.declared_behavior.has_value()) return false;
  if (a.declared_behavior) {
    auto ga = *a.declared_behavior;
    auto gb = *b.declared_behavior;
    std::sort(ga.nodes.begin(), ga.nodes.end());
    std::sort(gb.nodes.begin(), gb.nodes.end());
    ga.finalize();
    gb.finalize();
    if (ga != gb) return false;
  }
  return true;
}

std::vector<std::string> structural_problems(const TmModel& model) {
  std::vector<std::string> problems;
  std::unordered_map<std::string, const Machine*> machines;
  for (const auto& m : model.machines) {
    if (!machines.emplace(m.id, &m).second) problems.push_back("duplicate machine id '" + m.id + "'");
  }
  for (const auto& m : model.machines) {
    if (m.parent && !machines.count(*m.parent)) {
      problems.push_back("machine '" + m.id + "' has unknown parent '" + *m.parent + "'");
    }
    for (const auto& c : m.children) {
      auto it = machines.find(c);
      if (it == machines.end() || it->second->parent != m.id) {
        problems.push_back("machine '" + m.id + "' lists child '" + c + "' that does not point back");
      }
    }
    // Parent chains must terminate.
    std::unordered_set<std::string> seen{m.id};
    for (auto p = m.parent; p && machines.count(*p); p = machines.at(*p)->parent) {
      if (!seen.insert(*p).second) {
        problems.push_back("machine '" + m.id + "' is on a parent cycle");
        break;
      }
    }
  }

  std::unordered_set<std::string> node_ids;
  for (const auto& n : model.nodes) {
    if (!node_ids.insert(n.id).second) problems.push_back("duplicate node id '" + n.id + "'");
    if (!machines.count(n.machine)) {
      problems.push_back("node '" + n.id + "' belongs to unknown machine '" + n.machine + "'");
    }
  }

  std::unordered_set<std::string> arc_ids;
  auto check_arcs = [&](const std::vector<Arc>& arcs, ArcKind kind) {
    for (const auto& a : arcs) {
      if (a.kind != kind) problems.push_back("arc '" + a.id + "' is stored with the wrong kind");
      if (!arc_ids.insert(a.id).second) problems.push_back("duplicate arc id '" + a.id + "'");
      if (!node_ids.count(a.src)) problems.push_back("arc '" + a.id + "' has unknown source '" + a.src + "'");
      if (!node_ids.count(a.dst)) problems.push_back("arc '" + a.id + "' has unknown target '" + a.dst + "'");
      if (a.src == a.dst) problems.push_back("arc '" + a.id + "' is a self-loop");
    }
  };
  check_arcs(model.flow_arcs, ArcKind::Flow);
  check_arcs(model.trigger_arcs, ArcKind::Trigger);
  return problems;
}

// ---------------------------------------------------------------------------
// Diagnostics

void sort_diagnostics(std::vector<Diagnostic>& diagnostics) {
  std::sort(diagnostics.begin(), diagnostics.end(), [](const Diagnostic& a, const Diagnostic& b) {
    static const std::string empty;
    const std::string& fa = a.ids.empty() ? empty : a.ids.front();
    const std::string& fb = b.ids.empty() ? empty : b.ids.front();
    return std::tie(a.severity, a.code, fa, a.message, a.ids) <
           std::tie(b.severity, b.code, fb, b.message, b.ids);
  });
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return count(diagnostics, Severity::Error) > 0;
}

std::size_t count(const std::vector<Diagnostic>& diagnostics, Severity severity) {
  return static_cast<std::size_t>(std::count_if(
      diagnostics.begin(), diagnostics.end(),
      [&](const Diagnostic& d) { return d.severity == severity; }));
}

// ---------------------------------------------------------------------------
// ModelIndex

ModelIndex::ModelIndex(const TmModel& model) : model_(&model) {
  for (const auto& m : model.machines) parent_[m.id] = m.parent;
  for (const auto& n : model.nodes) {
    nodes_[n.id] = &n;
    by_machine_[n.machine].push_back(&n);
  }
  for (const auto* arcs : {&model.flow_arcs, &model.trigger_arcs}) {
    for (const auto& a : *arcs) {
      out_[a.src].push_back(&a);
      in_[a.dst].push_back(&a);
    }
  }
}

const ActionNode& ModelIndex::node(std::string_view id) const {
  auto it = nodes_.find(std::string(id));
  if (it == nodes_.end()) throw Error("unknown node '" + std::string(id) + "'");
  return *it->second;
}

bool ModelIndex::has_node(std::string_view id) const {
  return nodes_.count(std::string(id)) > 0;
}

const std::vector<const Arc*>& ModelIndex::out_arcs(std::string_view node_id) const {
  static const std::vector<const Arc*> none;
  auto it = out_.find(std::string(node_id));
  return it == out_.end() ? none : it->second;
}

const std::vector<const Arc*>& ModelIndex::in_arcs(std::string_view node_id) const {
  static const std::vector<const Arc*> none;
  auto it = in_.find(std::string(node_id));
  return it == in_.end() ? none : it->second;
}

const std::vector<const ActionNode*>& ModelIndex::nodes_of(std::string_view machine_id) const {
  static const std::vector<const ActionNode*> none;
  auto it = by_machine_.find(std::string(machine_id));
  return it == by_machine_.end() ? none : it->second;
}

bool ModelIndex::is_ancestor(std::string_view ancestor, std::string_view machine) const {
  auto it = parent_.find(std::string(machine));
  std::size_t guard = parent_.size();
  while (it != parent_.end() && it->second && guard-- > 0) {
    if (*it->second == ancestor) return true;
    it = parent_.find(*it->second);
  }
  return false;
}

bool ModelIndex::same_family(std::string_view a, std::string_view b) const {
  return a == b || is_ancestor(a, b) || is_ancestor(b, a);
}

// ---------------------------------------------------------------------------
// Reachability

std::set<MachinePair> machine_reachability(
    const std::map<std::string, std::string>& machine_of,
    const std::vector<std::pair<std::string, std::string>>& edges) {
  std::map<std::string, std::vector<std::string>> succ;
  for (const auto& [s, d] : edges) succ[s].push_back(d);

  std::set<MachinePair> result;
  for (const auto& [start, start_machine] : machine_of) {
    // Nodes reachable from `start` over one or more edges.
    std::set<std::string> seen;
    std::deque<std::string> queue;
    for (const auto& d : succ[start]) {
      if (seen.insert(d).second) queue.push_back(d);
    }
    while (!queue.empty()) {
      std::string n = std::move(queue.front());
      queue.pop_front();
      for (const auto& d : succ[n]) {
        if (seen.insert(d).second) queue.push_back(d);
      }
    }
    for (const auto& n : seen) {
      auto it = machine_of.find(n);
      if (it == machine_of.end()) continue;
      if (it->second != start_machine) {
        result.emplace(start_machine, it->second);
      } else if (n == start) {
        result.emplace(start_machine, start_machine);
      }
    }
  }
  return result;
}

std::set<MachinePair> machine_reachability(const TmModel& model) {
  std::map<std::string, std::string> machine_of;
  for (const auto& n : model.nodes) machine_of[n.id] = n.machine;
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& a : model.all_arcs()) edges.emplace_back(a.src, a.dst);
  return machine_reachability(machine_of, edges);
}

}  // namespace tmlang
