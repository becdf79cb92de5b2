#pragma once

#include <vector>

#include "gridforge/domain.hpp"
#include "gridforge/grammar.hpp"
#include "gridforge/world.hpp"

namespace gridforge {

// Route token with its movement-event id; turns and inserted decorations
// carry no event (kNoEvent). Events move the agent or the carried object by
// exactly one cell: a single walk, or 1-2 push/pull tokens.
struct PlanToken {
  Action action;
  int event = kNoEvent;

  static constexpr int kNoEvent = -1;
  friend bool operator==(const PlanToken&, const PlanToken&) = default;
};

using MarkedPlan = std::vector<PlanToken>;

// Undecorated route implementing the verb under the leg-order convention:
// approach legs to the target cell (horizontal then vertical or the
// reverse; zigzag alternates axes per cell on diagonal offsets), then the
// interaction phase pushing or pulling the object flush against the first
// obstacle. Throws PlanningError when the description does not resolve to
// the designated target.
MarkedPlan plan_route(const SemanticFrame& frame, const WorldState& world,
                      Convention convention);

// Decorates movement events in place: cautiously prefixes L_turn R_turn
// R_turn L_turn, while_spinning prefixes four L_turns, hesitantly suffixes
// stay; while_zigzagging and none are identity here (zigzag is routing).
ActionSequence apply_adverb(const MarkedPlan& route, Adverb adverb);

// plan_route + apply_adverb.
ActionSequence plan(const SemanticFrame& frame, const WorldState& world, Convention convention);

// Deduplicated {horizontal_first, vertical_first} plans, horizontal_first
// first; every member is verified against the executor, goal and manner
// oracles before being returned.
std::vector<ActionSequence> gold_set(const SemanticFrame& frame, const WorldState& world);

}  // namespace gridforge
