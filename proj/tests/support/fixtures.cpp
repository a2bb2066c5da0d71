// Copyright 2026 The tmlang Authors
// SPDX-License-Identifier: Apache-2.0

#include "fixtures.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "tm/parse.hpp"

namespace tmtest {

std::string fixture_path(std::string_view name) {
  return std::string(TM_FIXTURE_DIR) + "/" + std::string(name) + ".tm";
}

std::string golden_path(std::string_view file) {
  return std::string(TM_GOLDEN_DIR) + "/" + std::string(file);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

tmlang::TmModel parse_or_throw(std::string_view text) {
  auto result = tmlang::parse(text);
  if (!result.ok()) {
    std::string msg = "parse failed";
    for (const auto& e : result.errors) msg += "\n" + tmlang::format_error(e);
    throw std::runtime_error(msg);
  }
  return *result.model;
}

tmlang::TmModel load_fixture(std::string_view name) {
  return parse_or_throw(read_text(fixture_path(name)));
}

bool matches_golden(std::string_view file, const std::string& actual) {
  const std::string path = golden_path(file);
  const char* update = std::getenv("TM_UPDATE_GOLDEN");
  if (update && std::string(update) == "1") {
    std::ofstream out(path, std::ios::binary);
    out << actual;
    return static_cast<bool>(out);
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str() == actual;
}

}  // namespace tmtest
