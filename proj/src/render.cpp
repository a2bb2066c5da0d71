// Copyright 2026 The tmlang Authors
// SPDX-License-Identifier: Apache-2.0

#include "tm/render.hpp"

#include <unistd.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>

#include "tm/events.hpp"
#include "tm/simplify.hpp"

namespace tmlang {

std::string_view to_string(View view) {
  switch (view) {
    case View::Static: return "static";
    case View::Events: return "events";
    case View::Behavior: return "behavior";
    case View::Simplified: return "simplified";
  }
  return "?";
}

std::optional<View> parse_view(std::string_view name) {
  for (View v : {View::Static, View::Events, View::Behavior, View::Simplified}) {
    if (to_string(v) == name) return v;
  }
  return std::nullopt;
}

namespace {

// Border colors for event regions, cycled.
constexpr std::array<const char*, 10> kPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
};

std::string q(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  out += '"';
  return out;
}

std::string attrs(const std::vector<std::pair<std::string, std::string>>& kv) {
  if (kv.empty()) return "";
  std::string out = " [";
  for (std::size_t i = 0; i < kv.size(); ++i) {
    out += (i ? ", " : "") + kv[i].first + "=" + kv[i].second;
  }
  return out + "]";
}

std::string node_label(const ActionNode& n) {
  std::string label = std::string(to_string(n.kind)) + "\n" + n.thing;
  if (n.label) label += "\n(" + *n.label + ")";
  return label;
}

class DotWriter {
 public:
  DotWriter(const TmModel& model, const RenderOptions& opts) : model_(model), opts_(opts) {
    out_ << "digraph " << q(model.name) << " {\n";
    out_ << "  rankdir=" << (opts.rankdir == RankDir::LR ? "LR" : "TB") << ";\n";
  }

  std::string finish() {
    out_ << "}\n";
    return out_.str();
  }

  std::ostringstream& out() { return out_; }

  // Emits machine clusters holding `nodes`; clusters without any of them
  // anywhere below are skipped.
  void clusters(const std::vector<const ActionNode*>& nodes,
                const std::map<std::string, std::vector<std::pair<std::string, std::string>>>& extra,
                bool labels = true) {
    std::map<std::string, std::vector<const ActionNode*>> by_machine;
    for (const auto* n : nodes) by_machine[n->machine].push_back(n);
    for (auto& [m, list] : by_machine) {
      std::sort(list.begin(), list.end(), [](const auto* a, const auto* b) { return a->id < b->id; });
    }
    std::set<std::string> populated;
    for (const auto& [m, list] : by_machine) {
      for (const Machine* cur = model_.find_machine(m); cur;
           cur = cur->parent ? model_.find_machine(*cur->parent) : nullptr) {
        populated.insert(cur->id);
      }
    }
    std::vector<const Machine*> roots;
    for (const auto& m : model_.machines) {
      if (!m.parent && populated.count(m.id)) roots.push_back(&m);
    }
    std::sort(roots.begin(), roots.end(), [](const auto* a, const auto* b) { return a->id < b->id; });
    for (const auto* m : roots) cluster(*m, 1, by_machine, populated, extra, labels);
  }

 private:
  void indent(int depth) {
    for (int i = 0; i < depth; ++i) out_ << "  ";
  }

  void cluster(const Machine& m, int depth,
               const std::map<std::string, std::vector<const ActionNode*>>& by_machine,
               const std::set<std::string>& populated,
               const std::map<std::string, std::vector<std::pair<std::string, std::string>>>& extra,
               bool labels) {
    indent(depth);
    out_ << "subgraph " << q("cluster_" + m.id) << " {\n";
    indent(depth + 1);
    out_ << "label=" << q(m.name) << ";\n";
    if (auto it = by_machine.find(m.id); it != by_machine.end()) {
      for (const auto* n : it->second) {
        std::vector<std::pair<std::string, std::string>> kv;
        kv.emplace_back("label", labels ? q(node_label(*n)) : q(""));
        if (auto e = extra.find(n->id); e != extra.end()) kv.insert(kv.end(), e->second.begin(), e->second.end());
        indent(depth + 1);
        out_ << q(n->id) << attrs(kv) << ";\n";
      }
    }
    std::vector<std::string> children = m.children;
    std::sort(children.begin(), children.end());
    for (const auto& c : children) {
      if (!populated.count(c)) continue;
      if (const Machine* child = model_.find_machine(c)) {
        cluster(*child, depth + 1, by_machine, populated, extra, labels);
      }
    }
    indent(depth);
    out_ << "}\n";
  }

  const TmModel& model_;
  const RenderOptions& opts_;
  std::ostringstream out_;
};

struct EdgeLine {
  std::string src;
  std::string dst;
  bool dashed = false;
  std::optional<std::string> label;

  friend auto operator<=>(const EdgeLine&, const EdgeLine&) = default;
};

void emit_edges(std::ostringstream& out, std::vector<EdgeLine> edges, bool show_conditions) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (const auto& e : edges) {
    std::vector<std::pair<std::string, std::string>> kv;
    if (e.dashed) kv.emplace_back("style", "dashed");
    if (e.label && show_conditions) kv.emplace_back("label", q(*e.label));
    out << "  " << q(e.src) << " -> " << q(e.dst) << attrs(kv) << ";\n";
  }
}

std::vector<const ActionNode*> all_nodes(const TmModel& model) {
  std::vector<const ActionNode*> out;
  for (const auto& n : model.nodes) out.push_back(&n);
  return out;
}

std::vector<EdgeLine> static_edges(const TmModel& model) {
  std::vector<EdgeLine> edges;
  for (const auto& a : model.all_arcs()) {
    edges.push_back(EdgeLine{a.src, a.dst, a.kind == ArcKind::Trigger, a.condition});
  }
  return edges;
}

std::string render_static(const TmModel& model, const RenderOptions& opts) {
  DotWriter w(model, opts);
  w.out() << "  node [shape=box];\n";
  w.clusters(all_nodes(model), {});
  emit_edges(w.out(), static_edges(model), opts.show_conditions);
  return w.finish();
}

std::string render_events(const TmModel& model, const RenderOptions& opts) {
  std::vector<const EventDef*> events;
  for (const auto& e : model.events) events.push_back(&e);
  std::stable_sort(events.begin(), events.end(), [](const EventDef* a, const EventDef* b) {
    if (a->order.has_value() != b->order.has_value()) return a->order.has_value();
    return a->order && *a->order < *b->order;
  });

  std::map<std::string, std::string> color;
  std::map<std::string, std::vector<std::string>> member_of;
  for (std::size_t i = 0; i < events.size(); ++i) {
    color[events[i]->name] = kPalette[i % kPalette.size()];
    for (const auto& n : events[i]->region_nodes) member_of[n].push_back(events[i]->name);
  }

  std::map<std::string, std::vector<std::pair<std::string, std::string>>> extra;
  for (const auto& [node, names] : member_of) {
    std::string list;
    for (const auto& name : names) list += (list.empty() ? "" : " ") + name;
    extra[node] = {{"color", q(color[names.front()])}, {"penwidth", "2"}, {"tooltip", q(list)}};
  }

  DotWriter w(model, opts);
  w.out() << "  node [shape=box];\n";
  w.clusters(all_nodes(model), extra);
  if (!events.empty()) {
    std::vector<std::string> names;
    for (const auto* e : events) names.push_back(e->name);
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    w.out() << "  subgraph \"cluster_events\" {\n    label=\"events\";\n";
    for (const auto& name : names) {
      w.out() << "    " << q("event:" + name)
              << attrs({{"shape", "note"}, {"color", q(color[name])}, {"penwidth", "2"}, {"label", q(name)}})
              << ";\n";
    }
    w.out() << "  }\n";
  }
  emit_edges(w.out(), static_edges(model), opts.show_conditions);
  return w.finish();
}

std::string render_behavior(const TmModel& model, const RenderOptions& opts) {
  BehaviorGraph graph = opts.declared_behavior ? *model.declared_behavior : derive_behavior(model);
  DotWriter w(model, opts);
  std::vector<std::string> nodes = graph.nodes;
  std::sort(nodes.begin(), nodes.end());
  for (const auto& n : nodes) {
    w.out() << "  " << q(n) << attrs({{"shape", "ellipse"}, {"label", q(n)}}) << ";\n";
  }
  std::vector<EdgeLine> edges;
  for (const auto& e : graph.edges) edges.push_back(EdgeLine{e.from, e.to, false, e.condition});
  emit_edges(w.out(), edges, opts.show_conditions);
  return w.finish();
}

std::string render_simplified(const TmModel& model, const RenderOptions& opts) {
  SimplifiedView view = simplify(model, *opts.level);
  DotWriter w(model, opts);
  w.out() << "  node [shape=box];\n";
  std::vector<EdgeLine> edges;

  if (view.level < 3) {
    std::vector<const ActionNode*> nodes;
    for (const auto& n : view.nodes) nodes.push_back(&n);
    w.clusters(nodes, {});
    for (const auto& a : view.arcs) {
      edges.push_back(EdgeLine{a.src, a.dst, a.style == ArcStyle::Dashed, a.condition});
    }
  } else {
    std::set<std::string> boxes;
    for (const auto& n : view.nodes) boxes.insert(n.machine);
    for (const auto& m : boxes) {
      w.out() << "  " << q("machine:" + m) << attrs({{"label", q(m)}}) << ";\n";
    }
    // One edge per machine pair; it keeps a label only if every arc had one.
    struct Merged {
      bool unconditional = false;
      std::set<std::string> labels;
    };
    std::map<std::pair<std::string, std::string>, Merged> merged;
    for (const auto& a : view.arcs) {
      if (!a.machine_level) continue;
      auto& m = merged[{a.src_machine, a.dst_machine}];
      if (a.condition) {
        m.labels.insert(*a.condition);
      } else {
        m.unconditional = true;
      }
    }
    for (const auto& [pair, m] : merged) {
      std::optional<std::string> label;
      if (!m.unconditional) {
        label.emplace();
        for (const auto& l : m.labels) *label += (label->empty() ? "" : " | ") + l;
      }
      edges.push_back(EdgeLine{"machine:" + pair.first, "machine:" + pair.second, false, label});
    }
  }
  emit_edges(w.out(), edges, opts.show_conditions);
  return w.finish();
}

}  // namespace

std::string to_dot(const TmModel& model, const RenderOptions& opts) {
  if (opts.view == View::Simplified) {
    if (!opts.level) throw Error("view=simplified requires level (1, 2 or 3)");
    if (*opts.level < 1 || *opts.level > 3) {
      throw Error("view=simplified with level=" + std::to_string(*opts.level) + " is unsupported");
    }
  } else if (opts.level) {
    throw Error("level is only meaningful with view=simplified (got view=" +
                std::string(to_string(opts.view)) + ")");
  }
  if (opts.declared_behavior) {
    if (opts.view != View::Behavior) throw Error("declared_behavior requires view=behavior");
    if (!model.declared_behavior) throw Error("declared_behavior set but the model declares no behavior");
  }

  switch (opts.view) {
    case View::Static: return render_static(model, opts);
    case View::Events: return render_events(model, opts);
    case View::Behavior: return render_behavior(model, opts);
    case View::Simplified: return render_simplified(model, opts);
  }
  return {};
}

std::string output_name(const TmModel& model, const RenderOptions& opts) {
  std::string view(to_string(opts.view));
  if (opts.view == View::Simplified && opts.level) view += "-L" + std::to_string(*opts.level);
  return model.name + "." + view + ".dot";
}

std::string dot_to_svg(const std::string& dot) {
  char in_path[] = "/tmp/tmlang-XXXXXX";
  int fd = mkstemp(in_path);
  if (fd < 0) throw Error("cannot create a temporary file for SVG conversion");
  close(fd);
  {
    std::ofstream f(in_path, std::ios::binary);
    f << dot;
  }
  std::string command = "dot -Tsvg '" + std::string(in_path) + "' 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  std::string svg;
  int status = -1;
  if (pipe) {
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) svg.append(buf.data(), n);
    status = pclose(pipe);
  }
  std::remove(in_path);
  if (status != 0 || svg.empty()) {
    throw Error("SVG output needs the Graphviz 'dot' program, which is missing or failed");
  }
  return svg;
}

}  // namespace tmlang
