// Copyright 2026 The tmlang Authors
// SPDX-License-Identifier: Apache-2.0

#include "tm/simplify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <tuple>

namespace tmlang {
namespace {

std::string join_conditions(const std::vector<std::string>& conditions) {
  std::string out;
  for (const auto& c : conditions) out += (out.empty() ? "" : ", ") + c;
  return out;
}

struct Contracted {
  std::vector<ViewArc> arcs;
  std::vector<Diagnostic> warnings;
};

// Removes every node failing `keep`, bridging each surviving source to the
// first surviving nodes reachable through removed ones.
Contracted contract(const std::map<std::string, const ActionNode*>& nodes,
                    const std::vector<ViewArc>& arcs,
                    const std::function<bool(const ActionNode&)>& keep) {
  std::map<std::string, std::vector<const ViewArc*>> out;
  for (const auto& a : arcs) out[a.src].push_back(&a);
  auto kept = [&](const std::string& id) { return keep(*nodes.at(id)); };

  std::set<ViewArc> result;
  std::set<std::tuple<std::string, std::string, std::string>> dropped;  // (first arc src, first arc dst, end)
  std::map<std::tuple<std::string, std::string, std::string>, std::string> dropped_conditions;

  for (const auto& first : arcs) {
    if (!kept(first.src)) continue;
    if (kept(first.dst)) {
      result.insert(first);
      continue;
    }

    using State = std::tuple<std::string, bool, std::vector<std::string>>;
    std::set<State> seen;
    std::vector<State> stack;
    auto conds = [](const ViewArc& a) {
      return a.condition ? std::vector<std::string>{*a.condition} : std::vector<std::string>{};
    };
    stack.emplace_back(first.dst, first.style == ArcStyle::Dashed, conds(first));
    while (!stack.empty()) {
      State state = std::move(stack.back());
      stack.pop_back();
      if (!seen.insert(state).second) continue;
      const auto& [at, dashed, conditions] = state;

      auto it = out.find(at);
      if (it == out.end() || it->second.empty()) {
        auto key = std::make_tuple(first.src, first.dst, at);
        dropped.insert(key);
        if (!conditions.empty()) dropped_conditions[key] = join_conditions(conditions);
        continue;
      }
      for (const ViewArc* next : it->second) {
        bool next_dashed = dashed || next->style == ArcStyle::Dashed;
        std::vector<std::string> next_conditions = conditions;
        // A condition repeats only when the chain loops; keep it once.
        if (next->condition && std::find(next_conditions.begin(), next_conditions.end(), *next->condition) ==
                                   next_conditions.end()) {
          next_conditions.push_back(*next->condition);
        }
        if (kept(next->dst)) {
          ViewArc bridged;
          bridged.src = first.src;
          bridged.dst = next->dst;
          bridged.src_machine = first.src_machine;
          bridged.dst_machine = next->dst_machine;
          bridged.style = next_dashed ? ArcStyle::Dashed : ArcStyle::Solid;
          if (!next_conditions.empty()) bridged.condition = join_conditions(next_conditions);
          result.insert(std::move(bridged));
        } else {
          stack.emplace_back(next->dst, next_dashed, std::move(next_conditions));
        }
      }
    }
  }

  Contracted c;
  c.arcs.assign(result.begin(), result.end());
  for (const auto& key : dropped) {
    const auto& [src, dst, end] = key;
    std::string message = "chain " + src + " -> " + dst + " ends at dropped action '" + end +
                          "' and is left out of the view";
    if (auto it = dropped_conditions.find(key); it != dropped_conditions.end()) {
      message += " (condition \"" + it->second + "\")";
    }
    c.warnings.push_back({Severity::Warning, "S1", std::move(message), {src, dst, end}});
  }
  return c;
}

}  // namespace

SimplifiedView simplify(const TmModel& model, int level) {
  if (level < 1 || level > 3) throw Error("simplification level must be 1, 2 or 3");

  std::map<std::string, const ActionNode*> nodes;
  for (const auto& n : model.nodes) nodes[n.id] = &n;

  std::vector<ViewArc> arcs;
  for (const auto& a : model.all_arcs()) {
    ViewArc v;
    v.src = a.src;
    v.dst = a.dst;
    v.src_machine = nodes.at(a.src)->machine;
    v.dst_machine = nodes.at(a.dst)->machine;
    v.style = a.kind == ArcKind::Trigger ? ArcStyle::Dashed : ArcStyle::Solid;
    v.condition = a.condition;
    arcs.push_back(std::move(v));
  }

  SimplifiedView view;
  view.level = level;
  view.machines = model.machines;

  auto l1 = contract(nodes, arcs, [](const ActionNode& n) {
    return n.kind == ActionKind::Create || n.kind == ActionKind::Process;
  });
  view.warnings = l1.warnings;
  arcs = std::move(l1.arcs);
  std::function<bool(const ActionNode&)> survives = [](const ActionNode& n) {
    return n.kind == ActionKind::Create || n.kind == ActionKind::Process;
  };

  if (level >= 2) {
    auto l2 = contract(nodes, arcs, [](const ActionNode& n) { return n.kind == ActionKind::Process; });
    view.warnings.insert(view.warnings.end(), l2.warnings.begin(), l2.warnings.end());
    arcs = std::move(l2.arcs);
    survives = [](const ActionNode& n) { return n.kind == ActionKind::Process; };
  }

  if (level == 3) {
    std::set<ViewArc> solid;
    for (auto a : arcs) {
      a.style = ArcStyle::Solid;
      a.machine_level = a.src_machine != a.dst_machine;
      solid.insert(std::move(a));
    }
    arcs.assign(solid.begin(), solid.end());
    view.node_labels = false;
  }

  for (const auto& n : model.nodes) {
    if (survives(n)) view.nodes.push_back(n);
  }
  view.arcs = std::move(arcs);
  sort_diagnostics(view.warnings);
  return view;
}

std::set<MachinePair> view_reachability(const SimplifiedView& view) {
  std::map<std::string, std::string> machine_of;
  for (const auto& n : view.nodes) machine_of[n.id] = n.machine;
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& a : view.arcs) edges.emplace_back(a.src, a.dst);
  return machine_reachability(machine_of, edges);
}

}  // namespace tmlang
