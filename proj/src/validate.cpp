// Copyright 2026 The tmlang Authors
// SPDX-License-Identifier: Apache-2.0

// Structural legality of the five-action machine.

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "tm/core.hpp"

namespace tmlang {
namespace {

using K = ActionKind;

// Stage orders allowed for a flow that stays inside one machine family.
bool legal_internal_flow(K from, K to) {
  static const std::set<std::pair<K, K>> kLegal = {
      {K::Create, K::Release},   {K::Create, K::Process},   {K::Receive, K::Process},
      {K::Receive, K::Release},  {K::Process, K::Release},  {K::Process, K::Process},
      {K::Release, K::Transfer}, {K::Transfer, K::Receive},
  };
  return kLegal.count({from, to}) > 0;
}

std::string quote(std::string_view s) {
  std::string out = "'";
  out += s;
  out += "'";
  return out;
}

Diagnostic make(Severity sev, std::string code, std::string message, std::vector<std::string> ids) {
  return Diagnostic{sev, std::move(code), std::move(message), std::move(ids)};
}

void check_flows(const ModelIndex& index, std::vector<Diagnostic>& out) {
  for (const auto& arc : index.model().flow_arcs) {
    const ActionNode& src = index.node(arc.src);
    const ActionNode& dst = index.node(arc.dst);
    std::string pair = std::string(to_string(src.kind)) + " -> " + std::string(to_string(dst.kind));

    if (index.same_family(src.machine, dst.machine)) {
      if (!legal_internal_flow(src.kind, dst.kind)) {
        out.push_back(make(Severity::Error, "R1",
                           "flow " + pair + " within machine " + quote(src.machine) +
                               " is not a legal stage order",
                           {arc.id, src.id, dst.id}));
      }
    } else if (src.kind != K::Transfer || dst.kind != K::Transfer) {
      out.push_back(make(Severity::Error, "R2",
                         "flow " + pair + " between machines " + quote(src.machine) + " and " +
                             quote(dst.machine) + " must connect two transfer actions",
                         {arc.id, src.id, dst.id}));
    }

    if (src.thing != dst.thing) {
      out.push_back(make(Severity::Error, "R6",
                         "flow carries " + quote(src.thing) + " into an action on " + quote(dst.thing),
                         {arc.id, src.id, dst.id}));
    }
  }
}

// Every flow path from a create/process/receive to a transfer of the same
// machine family has to pass through a release.
void check_release_before_transfer(const ModelIndex& index, std::vector<Diagnostic>& out) {
  for (const auto& start : index.model().nodes) {
    if (start.kind != K::Create && start.kind != K::Process && start.kind != K::Receive) continue;

    std::set<std::string> seen;
    std::deque<std::string> queue;
    auto push_successors = [&](const std::string& id) {
      for (const Arc* a : index.out_arcs(id)) {
        if (a->kind != ArcKind::Flow) continue;
        if (index.node(a->dst).kind == K::Release) continue;
        if (seen.insert(a->dst).second) queue.push_back(a->dst);
      }
    };
    push_successors(start.id);
    while (!queue.empty()) {
      std::string id = queue.front();
      queue.pop_front();
      push_successors(id);
    }

    for (const auto& id : seen) {
      const ActionNode& n = index.node(id);
      if (n.kind == K::Transfer && index.same_family(start.machine, n.machine)) {
        out.push_back(make(Severity::Error, "R3",
                           "flow from " + quote(start.id) + " reaches output transfer " + quote(n.id) +
                               " without passing through a release",
                           {start.id, n.id}));
      }
    }
  }
}

void check_triggers(const ModelIndex& index, std::vector<Diagnostic>& out) {
  for (const auto& arc : index.model().trigger_arcs) {
    const ActionNode& dst = index.node(arc.dst);
    if (dst.kind != K::Create && dst.kind != K::Process) {
      out.push_back(make(Severity::Error, "R4",
                         "trigger targets a " + std::string(to_string(dst.kind)) +
                             " action; only create and process can be triggered",
                         {arc.id, dst.id}));
    }
  }
}

void check_branches(const ModelIndex& index, std::vector<Diagnostic>& out) {
  std::map<std::string, std::vector<const Arc*>> by_src;
  for (const auto* arcs : {&index.model().flow_arcs, &index.model().trigger_arcs}) {
    for (const auto& a : *arcs) {
      if (a.condition && !a.condition->empty()) by_src[a.src].push_back(&a);
    }
  }
  for (const auto& [src, arcs] : by_src) {
    if (arcs.size() == 1) {
      out.push_back(make(Severity::Warning, "R5",
                         "single conditional arc " + quote(arcs[0]->id) + " on " +
                             quote(*arcs[0]->condition) + " is treated as unconditional",
                         {arcs[0]->id, src}));
      continue;
    }
    std::map<std::string, std::vector<std::string>> by_label;
    for (const Arc* a : arcs) by_label[*a->condition].push_back(a->id);
    for (auto& [label, ids] : by_label) {
      if (ids.size() < 2) continue;
      std::sort(ids.begin(), ids.end());
      std::vector<std::string> all{src};
      all.insert(all.end(), ids.begin(), ids.end());
      out.push_back(make(Severity::Error, "R5",
                         "condition " + quote(label) + " appears on " + std::to_string(ids.size()) +
                             " arcs leaving " + quote(src),
                         std::move(all)));
    }
  }
}

// A transfer is one port: at most one outgoing and one incoming
// cross-machine flow.
void check_ports(const ModelIndex& index, std::vector<Diagnostic>& out) {
  for (const auto& n : index.model().nodes) {
    if (n.kind != K::Transfer) continue;
    std::vector<std::string> outgoing, incoming;
    for (const Arc* a : index.out_arcs(n.id)) {
      if (a->kind == ArcKind::Flow && !index.same_family(n.machine, index.node(a->dst).machine)) {
        outgoing.push_back(a->id);
      }
    }
    for (const Arc* a : index.in_arcs(n.id)) {
      if (a->kind == ArcKind::Flow && !index.same_family(n.machine, index.node(a->src).machine)) {
        incoming.push_back(a->id);
      }
    }
    for (auto* list : {&outgoing, &incoming}) {
      if (list->size() <= 1) continue;
      std::sort(list->begin(), list->end());
      std::vector<std::string> ids{n.id};
      ids.insert(ids.end(), list->begin(), list->end());
      out.push_back(make(Severity::Warning, "P1",
                         "transfer " + quote(n.id) + " has " + std::to_string(list->size()) +
                             (list == &outgoing ? " outgoing" : " incoming") + " cross-machine flows",
                         std::move(ids)));
    }
  }
}

}  // namespace

std::vector<Diagnostic> validate_model(const TmModel& model) {
  ModelIndex index(model);
  std::vector<Diagnostic> out;
  check_flows(index, out);
  check_release_before_transfer(index, out);
  check_triggers(index, out);
  check_branches(index, out);
  check_ports(index, out);
  sort_diagnostics(out);
  return out;
}

std::vector<BranchGroup> branch_groups(const TmModel& model) {
  std::map<std::string, std::vector<Arc>> by_src;
  for (const auto* arcs : {&model.flow_arcs, &model.trigger_arcs}) {
    for (const auto& a : *arcs) {
      if (a.condition && !a.condition->empty()) by_src[a.src].push_back(a);
    }
  }
  std::vector<BranchGroup> groups;
  for (auto& [src, arcs] : by_src) {
    if (arcs.size() < 2) continue;
    std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) {
      return std::tie(*a.condition, a.id) < std::tie(*b.condition, b.id);
    });
    groups.push_back(BranchGroup{src, std::move(arcs)});
  }
  return groups;
}

}  // namespace tmlang
