// Copyright 2026 The tmlang Authors
// SPDX-License-Identifier: Apache-2.0

#include "tm/events.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tmlang {
namespace {

struct Region {
  std::set<std::string> nodes;
  std::set<std::string> arcs;
};

Region region_of(const EventDef& e) {
  return Region{{e.region_nodes.begin(), e.region_nodes.end()},
                {e.region_arcs.begin(), e.region_arcs.end()}};
}

// Union-find over region nodes joined by region arcs.
bool weakly_connected(const Region& region, const std::map<std::string, const Arc*>& arcs) {
  if (region.nodes.size() <= 1) return true;
  std::map<std::string, std::string> parent;
  for (const auto& n : region.nodes) parent[n] = n;
  auto find = [&](std::string x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const auto& id : region.arcs) {
    auto it = arcs.find(id);
    if (it == arcs.end()) continue;
    const Arc& a = *it->second;
    if (!region.nodes.count(a.src) || !region.nodes.count(a.dst)) continue;
    parent[find(a.src)] = find(a.dst);
  }
  std::string root = find(*region.nodes.begin());
  return std::all_of(region.nodes.begin(), region.nodes.end(),
                     [&](const std::string& n) { return find(n) == root; });
}

}  // namespace

std::vector<Diagnostic> check_events(const TmModel& model) {
  std::vector<Diagnostic> out;
  std::map<std::string, const Arc*> arcs;
  for (const auto* list : {&model.flow_arcs, &model.trigger_arcs}) {
    for (const auto& a : *list) arcs[a.id] = &a;
  }
  std::set<std::string> node_ids;
  for (const auto& n : model.nodes) node_ids.insert(n.id);

  std::map<std::string, int> name_count;
  for (const auto& e : model.events) ++name_count[e.name];
  for (const auto& [name, n] : name_count) {
    if (n > 1) {
      out.push_back({Severity::Error, "EV3",
                     "event name '" + name + "' is declared " + std::to_string(n) + " times",
                     {name}});
    }
  }

  std::set<std::string> covered;
  std::map<std::set<std::string>, std::vector<std::string>> by_node_set;
  for (const auto& e : model.events) {
    Region region = region_of(e);
    bool resolvable = true;
    if (region.nodes.empty()) {
      out.push_back({Severity::Error, "EV2", "event '" + e.name + "' has an empty region", {e.name}});
      continue;
    }
    for (const auto& n : region.nodes) {
      if (!node_ids.count(n)) {
        out.push_back({Severity::Error, "EV2",
                       "event '" + e.name + "' references unknown node '" + n + "'", {e.name, n}});
        resolvable = false;
      }
      covered.insert(n);
    }
    for (const auto& id : region.arcs) {
      auto it = arcs.find(id);
      if (it == arcs.end()) {
        out.push_back({Severity::Error, "EV2",
                       "event '" + e.name + "' references unknown arc '" + id + "'", {e.name, id}});
        resolvable = false;
        continue;
      }
      const Arc& a = *it->second;
      if (!region.nodes.count(a.src) || !region.nodes.count(a.dst)) {
        out.push_back({Severity::Error, "EV2",
                       "arc '" + id + "' of event '" + e.name + "' leaves the event's nodes",
                       {e.name, id}});
        resolvable = false;
      }
    }
    if (resolvable && !weakly_connected(region, arcs)) {
      out.push_back({Severity::Error, "EV1",
                     "region of event '" + e.name + "' is not connected by its arcs", {e.name}});
    }
    by_node_set[region.nodes].push_back(e.name);
  }

  for (const auto& n : model.nodes) {
    if (!covered.count(n.id)) {
      out.push_back({Severity::Warning, "EV4", "node '" + n.id + "' belongs to no event", {n.id}});
    }
  }
  for (auto& [nodes, names] : by_node_set) {
    if (names.size() < 2) continue;
    std::sort(names.begin(), names.end());
    std::string list;
    for (const auto& name : names) list += (list.empty() ? "" : ", ") + name;
    out.push_back({Severity::Warning, "EV5", "events " + list + " cover identical nodes", names});
  }

  sort_diagnostics(out);
  return out;
}

BehaviorGraph derive_behavior(const TmModel& model) {
  BehaviorGraph graph;
  std::vector<std::pair<std::string, Region>> regions;
  for (const auto& e : model.events) {
    if (std::find(graph.nodes.begin(), graph.nodes.end(), e.name) == graph.nodes.end()) {
      graph.nodes.push_back(e.name);
    }
    regions.emplace_back(e.name, region_of(e));
  }
  const std::vector<Arc> arcs = model.all_arcs();
  std::map<std::string, const Arc*> arc_by_id;
  for (const auto& a : arcs) arc_by_id[a.id] = &a;

  struct Witness {
    bool unconditional = false;
    std::set<std::string> labels;
  };
  std::map<std::pair<std::string, std::string>, Witness> witnesses;

  for (const auto& [from, ri] : regions) {
    // Nodes of Ei that no region arc of Ei leaves.
    std::set<std::string> sinks = ri.nodes;
    for (const auto& id : ri.arcs) {
      if (auto it = arc_by_id.find(id); it != arc_by_id.end()) sinks.erase(it->second->src);
    }

    for (const auto& [to, rj] : regions) {
      if (from == to) continue;
      auto key = std::make_pair(from, to);

      for (const auto& a : arcs) {
        if (ri.nodes.count(a.src) && rj.nodes.count(a.dst) && !ri.arcs.count(a.id)) {
          auto& w = witnesses[key];
          if (a.condition) {
            w.labels.insert(*a.condition);
          } else {
            w.unconditional = true;
          }
        }
      }

      std::set<std::string> sources = rj.nodes;
      for (const auto& id : rj.arcs) {
        if (auto it = arc_by_id.find(id); it != arc_by_id.end()) sources.erase(it->second->dst);
      }
      for (const auto& n : sinks) {
        if (sources.count(n)) {
          witnesses[key].unconditional = true;
          break;
        }
      }
    }
  }

  for (const auto& [key, w] : witnesses) {
    BehaviorEdge edge{key.first, key.second, std::nullopt};
    if (!w.unconditional && !w.labels.empty()) {
      std::string label;
      for (const auto& l : w.labels) label += (label.empty() ? "" : " | ") + l;
      edge.condition = label;
    }
    graph.edges.push_back(std::move(edge));
  }
  graph.finalize();
  return graph;
}

std::vector<Diagnostic> compare_behavior(const BehaviorGraph& derived,
                                         const BehaviorGraph& declared) {
  std::vector<Diagnostic> out;
  for (const auto& e : declared.edges) {
    if (!derived.has_edge(e.from, e.to)) {
      out.push_back({Severity::Error, "B1",
                     "declared edge " + e.from + " -> " + e.to + " has no support in the static model",
                     {e.from, e.to}});
    }
  }
  for (const auto& e : derived.edges) {
    if (!declared.has_edge(e.from, e.to)) {
      out.push_back({Severity::Warning, "B2",
                     "derived edge " + e.from + " -> " + e.to + " is not declared", {e.from, e.to}});
    }
  }
  sort_diagnostics(out);
  return out;
}

}  // namespace tmlang
