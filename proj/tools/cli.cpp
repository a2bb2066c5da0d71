// Copyright 2026 The tmlang Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tm/events.hpp"
#include "tm/parse.hpp"
#include "tm/render.hpp"
#include "tm/sim.hpp"
#include "tm/simplify.hpp"

namespace tmlang::cli {
namespace {

struct Style {
  bool color = false;

  std::string paint(std::string_view code, std::string_view text) const {
    if (!color) return std::string(text);
    return "\033[" + std::string(code) + "m" + std::string(text) + "\033[0m";
  }
};

Style pick_style(const std::ostream& out) {
  const char* env = std::getenv("TM_COLOR");
  std::string mode = env ? env : "auto";
  if (mode == "always") return {true};
  if (mode == "never") return {false};
  return {&out == &std::cout && isatty(STDOUT_FILENO)};
}

struct Loaded {
  TmModel model;
  SourceMap spans;
  std::string file;
};

bool read_file(const std::string& path, std::string& text) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  text = buf.str();
  return true;
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) return false;
  f << text;
  return static_cast<bool>(f);
}

// kOk with `loaded` filled, or the status to exit with.
int load(const std::string& path, std::optional<Loaded>& loaded, std::ostream& out,
         std::ostream& err, const Style& style) {
  std::string text;
  if (!read_file(path, text)) {
    err << "tm: cannot read " << path << "\n";
    return kUsage;
  }
  ParseResult result = parse(text, path);
  if (!result.ok()) {
    for (const auto& e : result.errors) {
      std::string line = format_error(e);
      if (auto at = line.find(": error: "); at != std::string::npos && style.color) {
        line = line.substr(0, at) + ": " + style.paint("1;31", "error") + line.substr(at + 7);
      }
      out << line << "\n";
    }
    return kDiagnosticErrors;
  }
  loaded = Loaded{std::move(*result.model), std::move(result.spans), path};
  return kOk;
}

std::optional<SourceSpan> span_for(const Loaded& l, const Diagnostic& d) {
  for (const auto& id : d.ids) {
    for (const char* prefix : {"node:", "arc:", "event:", "machine:"}) {
      if (auto it = l.spans.find(prefix + id); it != l.spans.end()) return it->second;
    }
  }
  return std::nullopt;
}

void print_diagnostics(const Loaded& l, const std::vector<Diagnostic>& diags, std::ostream& out,
                       const Style& style) {
  for (const auto& d : diags) {
    auto span = span_for(l, d);
    if (span) {
      out << span->file << ":" << span->line << ":" << span->column << ": ";
    } else {
      out << l.file << ": ";
    }
    bool error = d.severity == Severity::Error;
    out << style.paint(error ? "1;31" : "1;33", to_string(d.severity)) << "[" << d.code
        << "]: " << d.message << "\n";
  }
}

void print_summary(const std::vector<Diagnostic>& diags, std::ostream& out) {
  std::size_t errors = count(diags, Severity::Error);
  std::size_t warnings = count(diags, Severity::Warning);
  out << errors << (errors == 1 ? " error, " : " errors, ") << warnings
      << (warnings == 1 ? " warning\n" : " warnings\n");
}

std::string diagnostics_json(const std::vector<Diagnostic>& diags) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& d : diags) {
    nlohmann::ordered_json j;
    j["severity"] = std::string(to_string(d.severity));
    j["code"] = d.code;
    j["message"] = d.message;
    j["ids"] = d.ids;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

void print_edges(const BehaviorGraph& g, std::ostream& out) {
  for (const auto& e : g.edges) {
    out << e.from << " -> " << e.to;
    if (e.condition) out << " [" << *e.condition << "]";
    out << "\n";
  }
}

void print_trace(const std::string& title, const Trace& t, std::ostream& out) {
  out << title << ": " << to_string(t.terminal) << " after " << t.steps.size()
      << (t.steps.size() == 1 ? " step" : " steps");
  if (t.stopped_at) out << " at " << *t.stopped_at;
  out << "\n  events:";
  for (const auto& e : t.fired_events) out << " " << e;
  if (!t.decisions_taken.empty()) {
    out << "\n  decisions:";
    for (const auto& [node, label] : t.decisions_taken) out << " " << node << "=" << label;
  }
  out << "\n";
}

struct Flags {
  std::string file;
  bool json = false;
  bool derive = false;
  bool declared = false;
  bool compare = false;
  std::string scenario;
  bool exhaustive = false;
  std::optional<std::size_t> max_steps;
  bool check = false;
  std::vector<std::string> seeds;
  int level = 0;
  std::string output;
  std::string view = "static";
  std::string format = "dot";
  std::string rankdir = "LR";
  bool no_conditions = false;
  bool write = false;
};

int cmd_check(const Flags& f, std::ostream& out, std::ostream& err, const Style& style) {
  std::optional<Loaded> l;
  if (int rc = load(f.file, l, out, err, style); rc != kOk) return rc;
  std::vector<Diagnostic> diags = validate_model(l->model);
  auto ev = check_events(l->model);
  diags.insert(diags.end(), ev.begin(), ev.end());
  sort_diagnostics(diags);
  if (f.json) {
    out << diagnostics_json(diags);
  } else {
    print_diagnostics(*l, diags, out, style);
    print_summary(diags, out);
  }
  return has_errors(diags) ? kDiagnosticErrors : kOk;
}

int cmd_behavior(const Flags& f, std::ostream& out, std::ostream& err, const Style& style) {
  std::optional<Loaded> l;
  if (int rc = load(f.file, l, out, err, style); rc != kOk) return rc;
  if ((f.declared || f.compare) && !l->model.declared_behavior) {
    out << l->file << ": " << style.paint("1;31", "error") << ": model declares no behavior block\n";
    return kDiagnosticErrors;
  }
  if (f.compare) {
    auto diags = compare_behavior(derive_behavior(l->model), *l->model.declared_behavior);
    print_diagnostics(*l, diags, out, style);
    print_summary(diags, out);
    return has_errors(diags) ? kDiagnosticErrors : kOk;
  }
  print_edges(f.declared ? *l->model.declared_behavior : derive_behavior(l->model), out);
  return kOk;
}

int cmd_sim(const Flags& f, std::ostream& out, std::ostream& err, const Style& style) {
  if (f.scenario.empty() == !f.exhaustive) {
    err << "tm sim: give exactly one of --scenario or --exhaustive\n";
    return kUsage;
  }
  std::optional<Loaded> l;
  if (int rc = load(f.file, l, out, err, style); rc != kOk) return rc;

  std::vector<std::string> seeds;
  for (const auto& s : f.seeds) seeds.push_back(resolve_node_ref(l->model, s));
  if (seeds.empty()) seeds = default_seeds(l->model);

  std::vector<std::pair<std::string, Trace>> traces;
  if (f.exhaustive) {
    auto all = enumerate(l->model, seeds, f.max_steps);
    out << all.size() << (all.size() == 1 ? " trace\n" : " traces\n");
    for (std::size_t i = 0; i < all.size(); ++i) {
      traces.emplace_back("trace " + std::to_string(i + 1), std::move(all[i]));
    }
  } else {
    std::string text;
    if (!read_file(f.scenario, text)) {
      err << "tm: cannot read " << f.scenario << "\n";
      return kUsage;
    }
    Scenario scenario = parse_scenario(text, f.scenario);
    if (f.max_steps) scenario.max_steps = f.max_steps;
    traces.emplace_back("trace " + f.scenario, run(l->model, scenario, seeds));
  }

  std::optional<BehaviorGraph> derived;
  if (f.check) derived = derive_behavior(l->model);
  bool failed = false;
  std::size_t conformant = 0;
  for (const auto& [title, trace] : traces) {
    print_trace(title, trace, out);
    if (!derived) continue;
    auto diags = check_trace(trace, *derived);
    if (diags.empty()) {
      ++conformant;
      out << "  conformant\n";
    } else {
      failed = failed || has_errors(diags);
      for (const auto& d : diags) {
        out << "  " << style.paint("1;31", to_string(d.severity)) << "[" << d.code << "]: " << d.message << "\n";
      }
    }
  }
  if (derived) out << conformant << " of " << traces.size() << " conformant\n";
  return failed ? kDiagnosticErrors : kOk;
}

int emit(const Flags& f, const std::string& text, std::ostream& out, std::ostream& err) {
  if (f.output.empty() || f.output == "-") {
    out << text;
    return kOk;
  }
  if (!write_file(f.output, text)) {
    err << "tm: cannot write " << f.output << "\n";
    return kUsage;
  }
  return kOk;
}

int cmd_render(const Flags& f, RenderOptions opts, std::ostream& out, std::ostream& err,
               const Style& style) {
  std::optional<Loaded> l;
  if (int rc = load(f.file, l, out, err, style); rc != kOk) return rc;
  opts.show_conditions = !f.no_conditions;
  opts.rankdir = f.rankdir == "TB" ? RankDir::TB : RankDir::LR;
  opts.format = f.format == "svg" ? Format::Svg : Format::Dot;

  if (opts.view == View::Simplified) {
    SimplifiedView view = simplify(l->model, *opts.level);
    print_diagnostics(*l, view.warnings, err, style);
  }
  std::string text = to_dot(l->model, opts);
  if (opts.format == Format::Svg) {
    try {
      text = dot_to_svg(text);
    } catch (const Error& e) {
      err << "tm: " << e.what() << "\n";
      return kUsage;
    }
  }
  return emit(f, text, out, err);
}

int cmd_fmt(const Flags& f, std::ostream& out, std::ostream& err, const Style& style) {
  std::optional<Loaded> l;
  if (int rc = load(f.file, l, out, err, style); rc != kOk) return rc;
  std::string text = print(l->model);
  if (f.write) {
    if (!write_file(f.file, text)) {
      err << "tm: cannot write " << f.file << "\n";
      return kUsage;
    }
    return kOk;
  }
  out << text;
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Thinging Machine model toolchain", "tm"};
  app.require_subcommand(1);
  Flags f;

  auto file_arg = [&](CLI::App* sub) {
    sub->add_option("FILE", f.file, "model source (.tm)")->required()->check(CLI::ExistingFile);
  };

  auto* check = app.add_subcommand("check", "parse, validate and check events");
  file_arg(check);
  check->add_flag("--json", f.json, "machine-readable diagnostics");

  auto* behavior = app.add_subcommand("behavior", "print the chronology of events");
  file_arg(behavior);
  auto* derive_opt = behavior->add_flag("--derive", f.derive, "derived graph (default)");
  behavior->add_flag("--declared", f.declared, "declared behavior block")->excludes(derive_opt);
  behavior->add_flag("--compare", f.compare, "compare derived against declared");

  auto* sim = app.add_subcommand("sim", "simulate scenarios");
  file_arg(sim);
  sim->add_option("--scenario", f.scenario, "scenario file")->check(CLI::ExistingFile);
  sim->add_flag("--exhaustive", f.exhaustive, "enumerate every decision assignment");
  sim->add_option("--max-steps", f.max_steps, "step limit per run")->check(CLI::PositiveNumber);
  sim->add_flag("--check", f.check, "check traces against the derived behavior");
  sim->add_option("--seed", f.seeds, "seed node (repeatable)");

  auto* simp = app.add_subcommand("simplify", "render a simplified view");
  file_arg(simp);
  simp->add_option("--level", f.level, "1, 2 or 3")->required()->check(CLI::Range(1, 3));
  simp->add_option("-o,--output", f.output, "output file (default stdout)");

  auto* render = app.add_subcommand("render", "render DOT or SVG");
  file_arg(render);
  render->add_option("--view", f.view, "static, events, behavior or simplified")
      ->check(CLI::IsMember({"static", "events", "behavior", "simplified"}));
  render->add_option("--format", f.format, "dot or svg")->check(CLI::IsMember({"dot", "svg"}));
  render->add_option("--level", f.level, "simplification level")->check(CLI::Range(1, 3));
  render->add_flag("--declared", f.declared, "behavior view: use the declared block");
  render->add_option("--rankdir", f.rankdir, "LR or TB")->check(CLI::IsMember({"LR", "TB"}));
  render->add_flag("--no-conditions", f.no_conditions, "omit condition labels");
  render->add_option("-o,--output", f.output, "output file (default stdout)");

  auto* fmt = app.add_subcommand("fmt", "canonical pretty-print");
  file_arg(fmt);
  fmt->add_flag("--write", f.write, "rewrite FILE in place");

  std::vector<const char*> argv{"tm"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "tm: " << e.what() << "\n\n";
    const CLI::App* failing = &app;
    for (auto* sub : app.get_subcommands()) failing = sub;
    err << failing->help();
    return kUsage;
  }

  Style style = pick_style(out);
  try {
    if (check->parsed()) return cmd_check(f, out, err, style);
    if (behavior->parsed()) return cmd_behavior(f, out, err, style);
    if (sim->parsed()) return cmd_sim(f, out, err, style);
    if (simp->parsed()) {
      RenderOptions opts;
      opts.view = View::Simplified;
      opts.level = f.level;
      return cmd_render(f, opts, out, err, style);
    }
    if (render->parsed()) {
      RenderOptions opts;
      opts.view = *parse_view(f.view);
      if (f.level) opts.level = f.level;
      opts.declared_behavior = f.declared;
      return cmd_render(f, opts, out, err, style);
    }
    if (fmt->parsed()) return cmd_fmt(f, out, err, style);
  } catch (const Error& e) {
    err << "tm: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace tmlang::cli
