// Copyright 2026 The tmlang Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <sstream>
#include <tuple>

#include "tm/parse.hpp"

namespace tmlang {
namespace {

std::string quoted(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

class Printer {
 public:
  explicit Printer(const TmModel& model) : model_(model) {}

  std::string run() {
    out_ << "model " << model_.name << " {\n";
    bool first_section = true;
    auto section = [&] {
      if (!first_section) out_ << "\n";
      first_section = false;
    };

    bool any_machine = false;
    for (const auto& m : model_.machines) {
      if (m.parent) continue;
      if (!any_machine) section();
      any_machine = true;
      print_machine(m, 1);
    }

    auto arcs_sorted = [](std::vector<Arc> arcs) {
      std::sort(arcs.begin(), arcs.end(),
                [](const Arc& a, const Arc& b) { return std::tie(a.src, a.dst) < std::tie(b.src, b.dst); });
      return arcs;
    };
    auto flows = arcs_sorted(model_.flow_arcs);
    auto triggers = arcs_sorted(model_.trigger_arcs);
    if (!flows.empty() || !triggers.empty()) section();
    for (const auto* list : {&flows, &triggers}) {
      for (const auto& a : *list) {
        out_ << "  " << to_string(a.kind) << " " << a.src << " -> " << a.dst;
        if (a.condition) out_ << " on " << quoted(*a.condition);
        out_ << ";\n";
      }
    }

    for (const auto& e : model_.events) {
      section();
      print_event(e);
    }

    if (model_.declared_behavior) {
      section();
      out_ << "  behavior {\n";
      for (const auto& e : model_.declared_behavior->edges) {
        out_ << "    " << e.from << " -> " << e.to << ";\n";
      }
      out_ << "  }\n";
    }
    out_ << "}\n";
    return out_.str();
  }

 private:
  void indent(int depth) {
    for (int i = 0; i < depth; ++i) out_ << "  ";
  }

  void print_machine(const Machine& m, int depth) {
    indent(depth);
    out_ << "machine " << m.name << " {\n";
    for (const auto& n : model_.nodes) {
      if (n.machine != m.id) continue;
      indent(depth + 1);
      out_ << to_string(n.kind) << " " << n.thing;
      std::string local = n.id.substr(std::min(n.id.size(), m.id.size() + 1));
      if (n.label || local != default_local_name(n.kind, n.thing)) out_ << " as " << local;
      out_ << ";\n";
    }
    for (const auto& child_id : m.children) {
      if (const Machine* child = model_.find_machine(child_id)) print_machine(*child, depth + 1);
    }
    indent(depth);
    out_ << "}\n";
  }

  void print_event(const EventDef& e) {
    out_ << "  event " << e.name;
    if (e.order) out_ << " order " << *e.order;
    out_ << " {\n    nodes: ";
    for (std::size_t i = 0; i < e.region_nodes.size(); ++i) {
      out_ << (i ? ", " : "") << e.region_nodes[i];
    }
    out_ << ";\n";
    if (!e.region_arcs.empty()) {
      out_ << "    arcs: ";
      for (std::size_t i = 0; i < e.region_arcs.size(); ++i) {
        // Arc ids are "<src>-><dst>"; print them with spaced arrows.
        std::string id = e.region_arcs[i];
        auto arrow = id.find("->");
        out_ << (i ? ", " : "");
        if (arrow == std::string::npos) {
          out_ << id;
        } else {
          out_ << id.substr(0, arrow) << " -> " << id.substr(arrow + 2);
        }
      }
      out_ << ";\n";
    }
    out_ << "  }\n";
  }

  const TmModel& model_;
  std::ostringstream out_;
};

}  // namespace

std::string print(const TmModel& model) { return Printer(model).run(); }

}  // namespace tmlang
