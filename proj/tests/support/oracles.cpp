// Copyright 2026 The tmlang Authors
// SPDX-License-Identifier: Apache-2.0

#include "oracles.hpp"

#include <algorithm>
#include <functional>

#include "tm/core.hpp"

namespace tmtest {

using tmlang::ActionKind;
using tmlang::ActionNode;
using tmlang::Arc;
using tmlang::ArcKind;

namespace {

// Machine ids are dotted paths, so nesting is a prefix relation.
bool family(const std::string& a, const std::string& b) {
  return a == b || b.rfind(a + ".", 0) == 0 || a.rfind(b + ".", 0) == 0;
}

// Rows: from, columns: to, in the order C P Rl T Rc.
constexpr bool kLegal[5][5] = {
    //          C      P      Rl     T      Rc
    /* C  */ {false, true, true, false, false},
    /* P  */ {false, true, true, false, false},
    /* Rl */ {false, false, false, true, false},
    /* T  */ {false, false, false, false, true},
    /* Rc */ {false, true, true, false, false},
};

int row(ActionKind k) {
  switch (k) {
    case ActionKind::Create: return 0;
    case ActionKind::Process: return 1;
    case ActionKind::Release: return 2;
    case ActionKind::Transfer: return 3;
    case ActionKind::Receive: return 4;
  }
  return 0;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : ",") + p;
  return out;
}

}  // namespace

std::set<Verdict> oracle_verdicts(const TmModel& model) {
  std::map<std::string, const ActionNode*> node;
  for (const auto& n : model.nodes) node[n.id] = &n;
  std::set<Verdict> out;

  for (const Arc& a : model.flow_arcs) {
    const ActionNode& s = *node.at(a.src);
    const ActionNode& d = *node.at(a.dst);
    if (family(s.machine, d.machine)) {
      if (!kLegal[row(s.kind)][row(d.kind)]) out.insert({"R1", a.id});
    } else if (!(s.kind == ActionKind::Transfer && d.kind == ActionKind::Transfer)) {
      out.insert({"R2", a.id});
    }
    if (s.thing != d.thing) out.insert({"R6", a.id});
  }

  for (const Arc& a : model.trigger_arcs) {
    ActionKind k = node.at(a.dst)->kind;
    if (k != ActionKind::Create && k != ActionKind::Process) out.insert({"R4", a.id});
  }

  // R3: enumerate simple flow paths that avoid release actions.
  std::map<std::string, std::vector<std::string>> succ;
  for (const Arc& a : model.flow_arcs) succ[a.src].push_back(a.dst);
  for (const auto& start : model.nodes) {
    if (start.kind != ActionKind::Create && start.kind != ActionKind::Process &&
        start.kind != ActionKind::Receive) {
      continue;
    }
    std::set<std::string> on_path{start.id};
    std::function<void(const std::string&)> walk = [&](const std::string& at) {
      for (const auto& next : succ[at]) {
        const ActionNode& n = *node.at(next);
        if (n.kind == ActionKind::Release || on_path.count(next)) continue;
        if (n.kind == ActionKind::Transfer && family(start.machine, n.machine)) {
          out.insert({"R3", start.id + "|" + n.id});
        }
        on_path.insert(next);
        walk(next);
        on_path.erase(next);
      }
    };
    walk(start.id);
  }

  std::map<std::string, std::vector<const Arc*>> conditional;
  for (const auto* list : {&model.flow_arcs, &model.trigger_arcs}) {
    for (const Arc& a : *list) {
      if (a.condition && !a.condition->empty()) conditional[a.src].push_back(&a);
    }
  }
  for (const auto& [src, arcs] : conditional) {
    if (arcs.size() == 1) {
      out.insert({"R5w", arcs.front()->id});
      continue;
    }
    for (const Arc* a : arcs) {
      std::vector<std::string> same;
      for (const Arc* b : arcs) {
        if (*b->condition == *a->condition) same.push_back(b->id);
      }
      if (same.size() < 2) continue;
      std::sort(same.begin(), same.end());
      out.insert({"R5", src + "|" + join(same)});
    }
  }
  return out;
}

std::set<Verdict> library_verdicts(const TmModel& model) {
  std::set<Verdict> out;
  for (const auto& d : tmlang::validate_model(model)) {
    if (d.code == "R1" || d.code == "R2" || d.code == "R4" || d.code == "R6") {
      out.insert({d.code, d.ids.at(0)});
    } else if (d.code == "R3") {
      out.insert({"R3", d.ids.at(0) + "|" + d.ids.at(1)});
    } else if (d.code == "R5" && d.severity == tmlang::Severity::Warning) {
      out.insert({"R5w", d.ids.at(0)});
    } else if (d.code == "R5") {
      std::vector<std::string> arcs(d.ids.begin() + 1, d.ids.end());
      std::sort(arcs.begin(), arcs.end());
      out.insert({"R5", d.ids.at(0) + "|" + join(arcs)});
    }
  }
  return out;
}

std::map<std::string, std::set<std::string>> transitive_closure(
    const std::vector<std::string>& nodes, const std::vector<std::pair<std::string, std::string>>& edges) {
  const std::size_t n = nodes.size();
  std::map<std::string, std::size_t> at;
  for (std::size_t i = 0; i < n; ++i) at[nodes[i]] = i;
  std::vector<std::vector<char>> r(n, std::vector<char>(n, 0));
  for (const auto& [u, v] : edges) r[at.at(u)][at.at(v)] = 1;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!r[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (r[k][j]) r[i][j] = 1;
      }
    }
  }
  std::map<std::string, std::set<std::string>> out;
  for (std::size_t i = 0; i < n; ++i) {
    auto& row_set = out[nodes[i]];
    for (std::size_t j = 0; j < n; ++j) {
      if (r[i][j]) row_set.insert(nodes[j]);
    }
  }
  return out;
}

namespace {

std::set<std::pair<std::string, std::string>> lift(const TmModel& model,
                                                   const std::set<std::string>& keep) {
  std::vector<std::string> ids;
  std::map<std::string, std::string> machine;
  for (const auto& n : model.nodes) {
    ids.push_back(n.id);
    machine[n.id] = n.machine;
  }
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& a : model.all_arcs()) edges.emplace_back(a.src, a.dst);
  auto closure = transitive_closure(ids, edges);

  std::set<std::pair<std::string, std::string>> out;
  for (const auto& [u, targets] : closure) {
    if (!keep.count(u)) continue;
    for (const auto& v : targets) {
      if (!keep.count(v)) continue;
      if (machine[u] != machine[v] || u == v) out.insert({machine[u], machine[v]});
    }
  }
  return out;
}

}  // namespace

std::set<std::pair<std::string, std::string>> oracle_machine_reachability(const TmModel& model) {
  std::set<std::string> all;
  for (const auto& n : model.nodes) all.insert(n.id);
  return lift(model, all);
}

std::set<std::pair<std::string, std::string>> oracle_view_reachability(
    const TmModel& model, const std::set<std::string>& surviving) {
  return lift(model, surviving);
}

TmModel random_model(std::mt19937& rng, int max_nodes, bool acyclic) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto chance = [&](double p) { return std::bernoulli_distribution(p)(rng); };

  TmModel m;
  m.name = "rand";
  int machine_count = pick(1, 4);
  for (int i = 0; i < machine_count; ++i) {
    tmlang::Machine mc;
    mc.name = "M" + std::to_string(i);
    if (i > 0 && chance(0.4)) {
      auto& parent = m.machines[static_cast<std::size_t>(pick(0, i - 1))];
      mc.parent = parent.id;
      mc.id = parent.id + "." + mc.name;
      parent.children.push_back(mc.id);
    } else {
      mc.id = mc.name;
    }
    m.machines.push_back(std::move(mc));
  }

  static const char* const kThings[] = {"a", "b"};
  int n = pick(2, std::max(2, max_nodes));
  for (int i = 0; i < n; ++i) {
    ActionNode node;
    node.machine = m.machines[static_cast<std::size_t>(pick(0, machine_count - 1))].id;
    node.kind = tmlang::kAllKinds[pick(0, 4)];
    node.thing = kThings[chance(0.8) ? 0 : 1];
    node.label = "n" + std::to_string(i);
    node.id = node.machine + "." + *node.label;
    m.nodes.push_back(std::move(node));
  }

  std::set<std::pair<int, int>> used;
  int arc_count = pick(n - 1, 2 * n);
  for (int tries = 0; tries < 20 * arc_count && static_cast<int>(used.size()) < arc_count; ++tries) {
    int s = pick(0, n - 1);
    int d = pick(0, n - 1);
    if (s == d) continue;
    if (acyclic && s > d) std::swap(s, d);
    if (!used.insert({s, d}).second) continue;
    Arc a;
    a.src = m.nodes[static_cast<std::size_t>(s)].id;
    a.dst = m.nodes[static_cast<std::size_t>(d)].id;
    a.id = tmlang::arc_id(a.src, a.dst);
    if (chance(0.25)) a.condition = chance(0.5) ? "x" : "y";
    if (chance(0.7)) {
      a.kind = ArcKind::Flow;
      m.flow_arcs.push_back(std::move(a));
    } else {
      a.kind = ArcKind::Trigger;
      m.trigger_arcs.push_back(std::move(a));
    }
  }

  for (int i = 0; i < n; ++i) {
    tmlang::EventDef e;
    e.name = "E" + std::to_string(i);
    e.region_nodes = {m.nodes[static_cast<std::size_t>(i)].id};
    m.events.push_back(std::move(e));
  }
  return m;
}

bool has_cycle(const std::vector<std::string>& nodes,
               const std::vector<std::pair<std::string, std::string>>& edges) {
  std::map<std::string, std::vector<std::string>> succ;
  for (const auto& [u, v] : edges) succ[u].push_back(v);
  std::map<std::string, int> color;  // 0 white, 1 grey, 2 black
  std::function<bool(const std::string&)> visit = [&](const std::string& u) {
    color[u] = 1;
    for (const auto& v : succ[u]) {
      if (color[v] == 1) return true;
      if (color[v] == 0 && visit(v)) return true;
    }
    color[u] = 2;
    return false;
  };
  for (const auto& u : nodes) {
    if (color[u] == 0 && visit(u)) return true;
  }
  return false;
}

}  // namespace tmtest
