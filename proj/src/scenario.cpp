// Copyright 2026 The tmlang Authors
// SPDX-License-Identifier: Apache-2.0

#include <sstream>

#include "tm/sim.hpp"

namespace tmlang {
namespace {

std::string trim(std::string_view s) {
  auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

Scenario parse_scenario(std::string_view text, std::string name) {
  Scenario scenario;
  scenario.name = std::move(name);
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string content = trim(line);
    if (content.empty()) continue;

    auto eq = content.find('=');
    auto where = [&] { return scenario.name + ":" + std::to_string(line_no) + ": "; };
    if (eq == std::string::npos) throw Error(where() + "expected 'node-id = condition[,condition...]'");
    std::string node = trim(std::string_view(content).substr(0, eq));
    if (node.empty()) throw Error(where() + "missing node id before '='");

    std::vector<std::string> labels;
    std::string rest = content.substr(eq + 1);
    std::size_t start = 0;
    while (true) {
      auto comma = rest.find(',', start);
      std::string label = trim(std::string_view(rest).substr(start, comma - start));
      if (label.size() >= 2 && label.front() == '"' && label.back() == '"') {
        label = label.substr(1, label.size() - 2);
      }
      if (label.empty()) throw Error(where() + "empty condition label");
      labels.push_back(std::move(label));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    auto& list = scenario.decisions[node];
    list.insert(list.end(), labels.begin(), labels.end());
  }
  return scenario;
}

}  // namespace tmlang
