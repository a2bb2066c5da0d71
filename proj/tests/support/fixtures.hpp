// Copyright 2026 The tmlang Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TM_TESTS_FIXTURES_HPP
#define TM_TESTS_FIXTURES_HPP

#include <string>
#include <string_view>
#include <vector>

#include "tm/core.hpp"

namespace tmtest {

inline const std::vector<std::string> kFixtures = {"submit-order", "telephone", "order-making",
                                                   "shipment"};

std::string fixture_path(std::string_view name);
std::string golden_path(std::string_view file);
std::string read_text(const std::string& path);

/// Parses fixtures/<name>.tm; throws std::runtime_error on parse errors.
tmlang::TmModel load_fixture(std::string_view name);
tmlang::TmModel parse_or_throw(std::string_view text);

/// Compares `actual` with tests/golden/<file>. With TM_UPDATE_GOLDEN=1 in
/// the environment the golden file is rewritten instead.
bool matches_golden(std::string_view file, const std::string& actual);

}  // namespace tmtest

#endif  // TM_TESTS_FIXTURES_HPP
