// Copyright 2026 The tmlang Authors
// SPDX-License-Identifier: Apache-2.0

// Brute-force reference implementations used to cross-check the library.
// None of these call into the library's analysis code.

#ifndef TM_TESTS_ORACLES_HPP
#define TM_TESTS_ORACLES_HPP

#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tm/core.hpp"

namespace tmtest {

using tmlang::TmModel;

/// One verdict: rule code plus the key of the offending item.
/// R1/R2/R4/R6: arc id. R3: "start|transfer". R5 error: "src|arc,arc..."
/// (arcs sorted). R5 warning ("R5w"): arc id.
using Verdict = std::pair<std::string, std::string>;

/// R1-R6 by rule table and simple-path enumeration.
std::set<Verdict> oracle_verdicts(const TmModel& model);

/// The same keys extracted from validate_model() output.
std::set<Verdict> library_verdicts(const TmModel& model);

/// u ->+ v over all arcs (Floyd-Warshall).
std::map<std::string, std::set<std::string>> transitive_closure(
    const std::vector<std::string>& nodes, const std::vector<std::pair<std::string, std::string>>& edges);

/// Machine reachability by closure. (A, B) for A != B iff some node of A
/// reaches some node of B; (A, A) iff some node of A reaches itself.
std::set<std::pair<std::string, std::string>> oracle_machine_reachability(const TmModel& model);

/// Reachability between surviving nodes of the full model, lifted to
/// machines. The relation a simplified view has to reproduce.
std::set<std::pair<std::string, std::string>> oracle_view_reachability(
    const TmModel& model, const std::set<std::string>& surviving);

/// Random small model. Arcs go from lower to higher node index when
/// `acyclic` is set. Each node gets a singleton event.
TmModel random_model(std::mt19937& rng, int max_nodes, bool acyclic = false);

/// Three-color DFS.
bool has_cycle(const std::vector<std::string>& nodes,
               const std::vector<std::pair<std::string, std::string>>& edges);

}  // namespace tmtest

#endif  // TM_TESTS_ORACLES_HPP
