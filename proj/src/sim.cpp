// Copyright 2026 The tmlang Authors
// SPDX-License-Identifier: Apache-2.0

#include "tm/sim.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

#include "tm/parse.hpp"

namespace tmlang {

std::string_view to_string(Terminal terminal) {
  switch (terminal) {
    case Terminal::Completed: return "Completed";
    case Terminal::DeadEnd: return "DeadEnd";
    case Terminal::StepLimit: return "StepLimit";
  }
  return "?";
}

std::vector<std::string> default_seeds(const TmModel& model) {
  ModelIndex index(model);
  std::vector<std::string> seeds;
  for (const auto& n : model.nodes) {
    if ((n.kind == ActionKind::Create || n.kind == ActionKind::Transfer) && index.in_arcs(n.id).empty()) {
      seeds.push_back(n.id);
    }
  }
  return seeds;
}

std::size_t default_max_steps(const TmModel& model) {
  return std::max<std::size_t>(1, 10 * model.nodes.size());
}

namespace {

// Returns the label to take at `node`, or nullopt when no decision remains.
using Chooser = std::function<std::optional<std::string>(const std::string& node,
                                                         const std::vector<std::string>& labels)>;

class Engine {
 public:
  explicit Engine(const TmModel& model) : model_(model), index_(model) {
    for (auto& g : branch_groups(model)) {
      std::vector<std::string> labels;
      for (const auto& a : g.arcs) labels.push_back(*a.condition);
      labels_[g.src] = std::move(labels);
    }
    for (const auto& e : model.events) {
      bool usable = !e.region_nodes.empty() &&
                    std::all_of(e.region_nodes.begin(), e.region_nodes.end(),
                                [&](const std::string& n) { return index_.has_node(n); });
      if (usable) events_.push_back({&e, {e.region_nodes.begin(), e.region_nodes.end()}});
    }
  }

  const std::vector<std::string>* labels_at(const std::string& node) const {
    auto it = labels_.find(node);
    return it == labels_.end() ? nullptr : &it->second;
  }

  void check_seeds(const std::vector<std::string>& seeds) const {
    for (const auto& s : seeds) {
      if (!index_.has_node(s)) throw Error("seed '" + s + "' is not a node of the model");
      const ActionNode& n = index_.node(s);
      bool inbound_transfer = n.kind == ActionKind::Transfer &&
                              std::none_of(index_.in_arcs(s).begin(), index_.in_arcs(s).end(),
                                           [](const Arc* a) { return a->kind == ArcKind::Flow; });
      if (n.kind != ActionKind::Create && !inbound_transfer) {
        throw Error("seed '" + s + "' must be a create or an inbound transfer action");
      }
    }
  }

  Trace run(const std::vector<std::string>& seeds, std::size_t max_steps, const Chooser& choose) const {
    Trace trace;
    std::deque<std::pair<long, std::string>> worklist;
    auto mint = [&](const std::string& thing, const std::string& at) {
      long id = static_cast<long>(trace.tokens.size()) + 1;
      trace.tokens.push_back(Token{id, thing, at});
      return id;
    };
    for (const auto& s : seeds) worklist.emplace_back(mint(index_.node(s).thing, s), s);

    std::vector<std::set<std::string>> activated(events_.size());

    while (!worklist.empty()) {
      if (trace.steps.size() >= max_steps) {
        trace.terminal = Terminal::StepLimit;
        trace.stopped_at = worklist.front().second;
        return trace;
      }
      auto [token, node_id] = std::move(worklist.front());
      worklist.pop_front();
      trace.steps.push_back(Step{trace.steps.size(), node_id, token});
      trace.tokens[static_cast<std::size_t>(token - 1)].at = node_id;

      for (std::size_t i = 0; i < events_.size(); ++i) {
        const auto& [event, region] = events_[i];
        if (!region.count(node_id)) continue;
        activated[i].insert(node_id);
        if (activated[i].size() == region.size()) {
          trace.fired_events.push_back(event->name);
          activated[i].clear();
        }
      }

      const ActionNode& node = index_.node(node_id);
      const auto& out = index_.out_arcs(node_id);
      if (out.empty() && (node.kind == ActionKind::Release || node.kind == ActionKind::Transfer)) {
        trace.terminal = Terminal::DeadEnd;
        trace.stopped_at = node_id;
        return trace;
      }

      std::optional<std::string> taken;
      if (const auto* labels = labels_at(node_id)) {
        taken = choose(node_id, *labels);
        if (!taken) {
          trace.terminal = Terminal::DeadEnd;
          trace.stopped_at = node_id;
          return trace;
        }
        trace.decisions_taken.emplace_back(node_id, *taken);
      }

      bool moved = false;
      for (const Arc* a : out) {
        if (taken && a->condition && a->condition != taken) continue;
        const ActionNode& dst = index_.node(a->dst);
        if (a->kind == ArcKind::Flow) {
          long id = moved ? mint(node.thing, node_id) : token;
          moved = true;
          worklist.emplace_back(id, a->dst);
        } else {
          worklist.emplace_back(mint(dst.thing, a->dst), a->dst);
        }
      }
    }
    trace.terminal = Terminal::Completed;
    return trace;
  }

 private:
  const TmModel& model_;
  ModelIndex index_;
  std::map<std::string, std::vector<std::string>> labels_;
  std::vector<std::pair<const EventDef*, std::set<std::string>>> events_;
};

}  // namespace

Trace run(const TmModel& model, const Scenario& scenario, const std::vector<std::string>& seeds) {
  Engine engine(model);
  engine.check_seeds(seeds);

  std::map<std::string, std::vector<std::string>> decisions;
  for (const auto& [ref, labels] : scenario.decisions) {
    std::string node = resolve_node_ref(model, ref);
    const auto* known = engine.labels_at(node);
    if (!known) throw Error("scenario decides '" + node + "', which is not a branch point");
    for (const auto& l : labels) {
      if (std::find(known->begin(), known->end(), l) == known->end()) {
        throw Error("scenario label '" + l + "' does not leave '" + node + "'");
      }
    }
    auto& list = decisions[node];
    list.insert(list.end(), labels.begin(), labels.end());
  }
  if (scenario.max_steps && *scenario.max_steps == 0) throw Error("max_steps must be positive");

  std::map<std::string, std::size_t> used;
  Chooser choose = [&](const std::string& node, const std::vector<std::string>&) -> std::optional<std::string> {
    auto it = decisions.find(node);
    std::size_t& k = used[node];
    if (it == decisions.end() || k >= it->second.size()) return std::nullopt;
    return it->second[k++];
  };
  return engine.run(seeds, scenario.max_steps.value_or(default_max_steps(model)), choose);
}

std::vector<Trace> enumerate(const TmModel& model, const std::vector<std::string>& seeds,
                             std::optional<std::size_t> max_steps, const EnumerateOptions& options) {
  Engine engine(model);
  engine.check_seeds(seeds);
  const std::size_t limit = max_steps.value_or(default_max_steps(model));
  if (limit == 0) throw Error("max_steps must be positive");

  std::vector<Trace> traces;
  std::function<void(const std::vector<std::string>&)> explore = [&](const std::vector<std::string>& prefix) {
    std::vector<std::vector<std::string>> options_seen;
    std::vector<std::string> taken;
    std::map<std::string, std::size_t> visits;
    bool over_bound = false;

    Chooser choose = [&](const std::string& node, const std::vector<std::string>& labels) -> std::optional<std::string> {
      if (++visits[node] > options.visit_bound) {
        over_bound = true;
        return std::nullopt;
      }
      std::size_t k = taken.size();
      std::string label = k < prefix.size() ? prefix[k] : labels.front();
      options_seen.push_back(labels);
      taken.push_back(label);
      return label;
    };

    Trace trace = engine.run(seeds, limit, choose);
    if (over_bound) trace.terminal = Terminal::StepLimit;
    traces.push_back(std::move(trace));
    if (traces.size() > options.trace_cap) {
      throw Error("enumeration exceeds the cap of " + std::to_string(options.trace_cap) + " traces");
    }

    for (std::size_t k = prefix.size(); k < options_seen.size(); ++k) {
      for (std::size_t alt = 1; alt < options_seen[k].size(); ++alt) {
        std::vector<std::string> next(taken.begin(), taken.begin() + static_cast<long>(k));
        next.push_back(options_seen[k][alt]);
        explore(next);
      }
    }
  };
  explore({});

  auto labels_of = [](const Trace& t) {
    std::vector<std::string> labels;
    for (const auto& d : t.decisions_taken) labels.push_back(d.second);
    return labels;
  };
  std::stable_sort(traces.begin(), traces.end(),
                   [&](const Trace& a, const Trace& b) { return labels_of(a) < labels_of(b); });
  return traces;
}

std::vector<Diagnostic> check_trace(const Trace& trace, const BehaviorGraph& behavior) {
  std::vector<Diagnostic> out;
  std::set<std::string> known(behavior.nodes.begin(), behavior.nodes.end());
  std::set<std::string> reported;
  for (const auto& e : trace.fired_events) {
    if (!known.count(e) && reported.insert(e).second) {
      out.push_back({Severity::Error, "T2", "fired event '" + e + "' is not in the behavior graph", {e}});
    }
  }
  for (std::size_t i = 1; i < trace.fired_events.size(); ++i) {
    const auto& from = trace.fired_events[i - 1];
    const auto& to = trace.fired_events[i];
    if (!behavior.has_edge(from, to) && !behavior.entry.count(to)) {
      out.push_back({Severity::Error, "T1",
                     "event " + to + " (position " + std::to_string(i + 1) + ") follows " + from +
                         " but the chronology has no edge " + from + " -> " + to,
                     {from, to}});
    }
  }
  sort_diagnostics(out);
  return out;
}

}  // namespace tmlang
