// Copyright 2026 The tmlang Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TM_TOOLS_CLI_HPP
#define TM_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace tmlang::cli {

enum ExitStatus : int {
  kOk = 0,
  kDiagnosticErrors = 1,
  kUsage = 2,
};

/// Runs `tm` with `args` (not including the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tmlang::cli

#endif  // TM_TOOLS_CLI_HPP
