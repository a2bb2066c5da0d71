// Copyright 2026 The tmlang Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tmlang::cli::run(args, std::cout, std::cerr);
}
