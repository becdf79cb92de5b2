#include "gridforge/planner.hpp"

#include <algorithm>

#include "gridforge/sampler.hpp"

namespace gridforge {

namespace {

// Minimal rotation from `from` to `to`; a reversal is two L_turns.
void emit_turns(MarkedPlan& out, Heading from, Heading to) {
  int r = (static_cast<int>(to) - static_cast<int>(from) + 4) % 4;
  if (r == 1) out.push_back({Action::turn_right});
  if (r == 3) out.push_back({Action::turn_left});
  if (r == 2) {
    out.push_back({Action::turn_left});
    out.push_back({Action::turn_left});
  }
}

// Unit steps of the approach. Straight offsets have one leg; diagonal
// offsets run one full axis then the other, or alternate per cell when
// zigzagging, starting with the convention's axis either way.
std::vector<Heading> approach_steps(Cell offset, Convention convention, bool zigzag) {
  Heading horizontal = offset.col > 0 ? Heading::east : Heading::west;
  Heading vertical = offset.row > 0 ? Heading::south : Heading::north;
  int h_left = std::abs(offset.col);
  int v_left = std::abs(offset.row);

  std::vector<Heading> steps;
  steps.reserve(h_left + v_left);
  bool horizontal_turn = convention == Convention::horizontal_first;
  if (zigzag && h_left > 0 && v_left > 0) {
    while (h_left > 0 || v_left > 0) {
      bool take_horizontal = horizontal_turn ? h_left > 0 : v_left == 0;
      if (take_horizontal) {
        steps.push_back(horizontal);
        --h_left;
      } else {
        steps.push_back(vertical);
        --v_left;
      }
      horizontal_turn = !horizontal_turn;
    }
    return steps;
  }
  auto emit_axis = [&](Heading dir, int count) {
    for (int i = 0; i < count; ++i) steps.push_back(dir);
  };
  if (horizontal_turn) {
    emit_axis(horizontal, h_left);
    emit_axis(vertical, v_left);
  } else {
    emit_axis(vertical, v_left);
    emit_axis(horizontal, h_left);
  }
  return steps;
}

int cells_until_blocked(const WorldState& world, Cell from, Heading dir) {
  Cell delta = heading_delta(dir);
  int count = 0;
  Cell cur = from;
  while (true) {
    Cell next{cur.row + delta.row, cur.col + delta.col};
    if (!world.in_bounds(next) || world.object_at(next)) return count;
    cur = next;
    ++count;
  }
}

}  // namespace

MarkedPlan plan_route(const SemanticFrame& frame, const WorldState& world,
                      Convention convention) {
  if (!validate_world(frame, world))
    throw PlanningError("plan: description does not resolve to the designated target");

  Cell target = *world.target_cell;
  Cell offset{target.row - world.agent.row, target.col - world.agent.col};

  MarkedPlan out;
  int event = 0;
  Heading heading = world.agent.heading;

  for (Heading step : approach_steps(offset, convention,
                                     frame.adverb == Adverb::while_zigzagging)) {
    emit_turns(out, heading, step);
    heading = step;
    out.push_back({Action::walk, event++});
  }

  if (frame.verb == Verb::walk) return out;

  if (offset.row == 0 && offset.col == 0)
    throw PlanningError("plan: interaction verb with the agent already on the target");

  Action token = frame.verb == Verb::push ? Action::push : Action::pull;
  Heading move_dir = frame.verb == Verb::push ? heading : opposite(heading);
  int cells = cells_until_blocked(world, target, move_dir);
  bool heavy = world.object_at(target)->heavy();
  for (int i = 0; i < cells; ++i) {
    out.push_back({token, event});
    if (heavy) out.push_back({token, event});
    ++event;
  }
  return out;
}

ActionSequence apply_adverb(const MarkedPlan& route, Adverb adverb) {
  ActionSequence out;
  out.reserve(route.size() * 2);
  int last_event = PlanToken::kNoEvent;
  for (const PlanToken& t : route) {
    bool event_boundary = t.event != last_event;
    if (event_boundary && last_event != PlanToken::kNoEvent && adverb == Adverb::hesitantly)
      out.push_back(Action::stay);
    if (event_boundary && t.event != PlanToken::kNoEvent) {
      if (adverb == Adverb::cautiously) {
        out.insert(out.end(), {Action::turn_left, Action::turn_right, Action::turn_right,
                               Action::turn_left});
      } else if (adverb == Adverb::while_spinning) {
        out.insert(out.end(), 4, Action::turn_left);
      }
    }
    out.push_back(t.action);
    last_event = t.event;
  }
  if (last_event != PlanToken::kNoEvent && adverb == Adverb::hesitantly)
    out.push_back(Action::stay);
  return out;
}

ActionSequence plan(const SemanticFrame& frame, const WorldState& world, Convention convention) {
  return apply_adverb(plan_route(frame, world, convention), frame.adverb);
}

std::vector<ActionSequence> gold_set(const SemanticFrame& frame, const WorldState& world) {
  std::vector<ActionSequence> golds;
  for (Convention c : {Convention::horizontal_first, Convention::vertical_first}) {
    ActionSequence seq = plan(frame, world, c);
    if (std::find(golds.begin(), golds.end(), seq) == golds.end()) golds.push_back(seq);
  }
  for (const ActionSequence& seq : golds) {
    ExecutionResult run = execute(world, seq);
    if (!run.ok) throw PlanningError("gold verification: execution failed: " + run.error);
    if (!goal_satisfied(frame, world, run.final_state))
      throw PlanningError("gold verification: goal not satisfied");
    if (!manner_satisfied(frame.adverb, seq, world.agent.heading))
      throw PlanningError("gold verification: manner not satisfied");
  }
  return golds;
}

}  // namespace gridforge
