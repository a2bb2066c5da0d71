// Copyright 2026 The tmlang Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TM_EVENTS_HPP
#define TM_EVENTS_HPP

#include <vector>

#include "tm/core.hpp"

namespace tmlang {

/// Region checks for declared events.
///
/// Errors: EV1 region not weakly connected, EV2 region empty or referencing
/// ids outside the model or outside its own node set, EV3 duplicate event
/// name. Warnings: EV4 node covered by no region, EV5 two events with the
/// same node set.
std::vector<Diagnostic> check_events(const TmModel& model);

/// Derives the chronology of events from the static model.
///
/// Ei -> Ej when a static arc leaves region(Ei) for a node of region(Ej)
/// without being one of Ei's region arcs, or when the regions share a node
/// that is a sink of Ei's region arcs and a source of Ej's. An edge carries a
/// condition only when every witness is a conditional arc.
BehaviorGraph derive_behavior(const TmModel& model);

/// B1 (error): declared edge with no derivation. B2 (warning): derivable
/// edge missing from the declaration.
std::vector<Diagnostic> compare_behavior(const BehaviorGraph& derived,
                                         const BehaviorGraph& declared);

}  // namespace tmlang

#endif  // TM_EVENTS_HPP
