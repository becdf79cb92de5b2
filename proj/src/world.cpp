#include "gridforge/world.hpp"

#include <algorithm>
#include <cassert>

namespace gridforge {

const ObjectSpec* WorldState::object_at(Cell c) const {
  auto it = std::lower_bound(objects.begin(), objects.end(), c,
                             [](const PlacedObject& o, Cell cell) { return o.cell < cell; });
  if (it != objects.end() && it->cell == c) return &it->spec;
  return nullptr;
}

void WorldState::add_object(Cell c, const ObjectSpec& spec) {
  if (!in_bounds(c)) throw DatasetError("object placement out of bounds");
  if (object_at(c)) throw DatasetError("cell already holds an object");
  objects.push_back({c, spec});
  sort_objects();
}

void WorldState::remove_object(Cell c) {
  auto it = std::find_if(objects.begin(), objects.end(),
                         [&](const PlacedObject& o) { return o.cell == c; });
  if (it == objects.end()) throw DatasetError("no object to remove at cell");
  objects.erase(it);
}

void WorldState::sort_objects() { std::sort(objects.begin(), objects.end()); }

StateTensor encode_state(const WorldState& world) {
  StateTensor t;
  t.grid_size = world.grid_size;
  t.values.assign(static_cast<size_t>(world.grid_size) * world.grid_size * StateTensor::kChannels,
                  0);
  t.at(world.agent.row, world.agent.col, StateTensor::kAgent) = 1;
  t.at(world.agent.row, world.agent.col,
       StateTensor::kHeadingBase + static_cast<int>(world.agent.heading)) = 1;
  for (const PlacedObject& o : world.objects) {
    t.at(o.cell.row, o.cell.col, StateTensor::kColorBase + static_cast<int>(o.spec.color)) = 1;
    t.at(o.cell.row, o.cell.col, StateTensor::kShapeBase + static_cast<int>(o.spec.shape)) = 1;
    t.at(o.cell.row, o.cell.col, StateTensor::kSizeBase + (o.spec.size - 1)) = 1;
  }
  return t;
}

WorldState decode_state(const StateTensor& tensor, std::optional<Cell> target_cell) {
  WorldState world;
  world.grid_size = tensor.grid_size;
  bool agent_found = false;
  for (int r = 0; r < tensor.grid_size; ++r)
    for (int c = 0; c < tensor.grid_size; ++c) {
      if (tensor.at(r, c, StateTensor::kAgent)) {
        if (agent_found) throw DatasetError("state tensor: multiple agent cells");
        agent_found = true;
        world.agent.row = r;
        world.agent.col = c;
        int headings = 0;
        for (int h = 0; h < 4; ++h)
          if (tensor.at(r, c, StateTensor::kHeadingBase + h)) {
            world.agent.heading = static_cast<Heading>(h);
            ++headings;
          }
        if (headings != 1) throw DatasetError("state tensor: heading channels not one-hot");
      }
      int colors = 0, shapes = 0, sizes = 0;
      ObjectSpec spec;
      for (int i = 0; i < 4; ++i)
        if (tensor.at(r, c, StateTensor::kColorBase + i)) {
          spec.color = static_cast<Color>(i);
          ++colors;
        }
      for (int i = 0; i < 3; ++i)
        if (tensor.at(r, c, StateTensor::kShapeBase + i)) {
          spec.shape = static_cast<Shape>(i);
          ++shapes;
        }
      for (int i = 0; i < 4; ++i)
        if (tensor.at(r, c, StateTensor::kSizeBase + i)) {
          spec.size = i + 1;
          ++sizes;
        }
      if (colors == 0 && shapes == 0 && sizes == 0) continue;
      if (colors != 1 || shapes != 1 || sizes != 1)
        throw DatasetError("state tensor: object channels not one-hot");
      world.objects.push_back({{r, c}, spec});
    }
  if (!agent_found) throw DatasetError("state tensor: no agent cell");
  world.sort_objects();
  world.target_cell = target_cell;
  if (target_cell && !world.object_at(*target_cell))
    throw DatasetError("state tensor: target cell holds no object");
  return world;
}

Heading turn(Heading heading, Action token) {
  int h = static_cast<int>(heading);  // north, east, south, west clockwise
  if (token == Action::turn_left) return static_cast<Heading>((h + 3) % 4);
  if (token == Action::turn_right) return static_cast<Heading>((h + 1) % 4);
  return heading;
}

ActionSequence actions_from_strings(const std::vector<std::string>& tokens) {
  ActionSequence out;
  out.reserve(tokens.size());
  for (const std::string& t : tokens) out.push_back(action_from_string(t));
  return out;
}

std::vector<std::string> actions_to_strings(const ActionSequence& actions) {
  std::vector<std::string> out;
  out.reserve(actions.size());
  for (Action a : actions) out.emplace_back(to_string(a));
  return out;
}

namespace {

struct Simulation {
  WorldState state;
  int pending = 0;           // first token of a heavy pair consumed
  Action pending_action{};   // push or pull being paired

  // Moves the object under the agent one cell in `dir`; the agent rides
  // along. Returns an error message or empty on success.
  std::string move_object(Heading dir) {
    Cell from = state.agent.cell();
    const ObjectSpec* obj = state.object_at(from);
    assert(obj);
    Cell delta = heading_delta(dir);
    Cell to{from.row + delta.row, from.col + delta.col};
    if (!state.in_bounds(to)) return "object pushed off the grid";
    if (state.object_at(to)) return "object pushed into an occupied cell";
    ObjectSpec spec = *obj;
    state.remove_object(from);
    state.add_object(to, spec);
    if (state.target_cell == from) state.target_cell = to;
    state.agent.row = to.row;
    state.agent.col = to.col;
    return {};
  }

  std::string apply(Action a) {
    if (pending > 0 && a != pending_action)
      return "half-move: heavy object needs a second consecutive " +
             std::string(to_string(pending_action));
    switch (a) {
      case Action::stay:
        return {};
      case Action::turn_left:
      case Action::turn_right:
        state.agent.heading = turn(state.agent.heading, a);
        return {};
      case Action::walk: {
        Cell delta = heading_delta(state.agent.heading);
        Cell to{state.agent.row + delta.row, state.agent.col + delta.col};
        if (!state.in_bounds(to)) return "walked off the grid";
        state.agent.row = to.row;
        state.agent.col = to.col;
        return {};
      }
      case Action::push:
      case Action::pull: {
        const ObjectSpec* obj = state.object_at(state.agent.cell());
        if (!obj)
          return std::string(to_string(a)) + " with no object at the agent's cell";
        Heading dir =
            a == Action::push ? state.agent.heading : opposite(state.agent.heading);
        if (!obj->heavy()) return move_object(dir);
        if (pending == 0) {
          pending = 1;
          pending_action = a;
          return {};
        }
        pending = 0;
        return move_object(dir);
      }
    }
    return "unknown action";
  }
};

}  // namespace

ExecutionResult execute(const WorldState& world, const ActionSequence& actions) {
  ExecutionResult result;
  Simulation sim{world};
  result.steps.reserve(actions.size());
  for (size_t i = 0; i < actions.size(); ++i) {
    std::string err = sim.apply(actions[i]);
    if (!err.empty()) {
      result.ok = false;
      result.error_index = i;
      result.error = std::move(err);
      result.final_state = std::move(sim.state);
      return result;
    }
    result.steps.push_back({sim.state.agent, sim.state.objects, sim.state.target_cell});
  }
  if (sim.pending > 0) {
    result.ok = false;
    result.error_index = actions.empty() ? 0 : actions.size() - 1;
    result.error = "half-move: odd number of " +
                   std::string(to_string(sim.pending_action)) + " tokens on a heavy object";
    result.final_state = std::move(sim.state);
    return result;
  }
  result.ok = true;
  result.final_state = std::move(sim.state);
  return result;
}

namespace {

bool blocked_beyond(const WorldState& world, Cell cell, Heading dir) {
  Cell delta = heading_delta(dir);
  Cell next{cell.row + delta.row, cell.col + delta.col};
  return !world.in_bounds(next) || world.object_at(next) != nullptr;
}

}  // namespace

bool goal_satisfied(const SemanticFrame& frame, const WorldState& initial,
                    const WorldState& final_state) {
  if (!initial.target_cell) throw DatasetError("goal check: initial state has no target");
  Cell start = *initial.target_cell;

  if (frame.verb == Verb::walk) return final_state.agent.cell() == start;

  if (!final_state.target_cell) throw DatasetError("goal check: final state lost the target");
  Cell end = *final_state.target_cell;
  int dr = end.row - start.row;
  int dc = end.col - start.col;

  if (dr == 0 && dc == 0) {
    // Never moved: accept only when the agent reached the object and it is
    // already flush along the verb's direction.
    if (final_state.agent.cell() != end) return false;
    Heading dir = frame.verb == Verb::push ? final_state.agent.heading
                                           : opposite(final_state.agent.heading);
    return blocked_beyond(final_state, end, dir);
  }

  if (dr != 0 && dc != 0) return false;  // moved on both axes
  Heading dir;
  if (dr != 0)
    dir = dr > 0 ? Heading::south : Heading::north;
  else
    dir = dc > 0 ? Heading::east : Heading::west;
  return blocked_beyond(final_state, end, dir);
}

namespace {

// One movement event: a walk token, or a maximal run of up to two identical
// interaction tokens.
struct MovementEvent {
  size_t begin = 0;  // first token index
  size_t end = 0;    // one past last token index
  bool is_walk = false;
  Heading heading_at = Heading::east;  // heading when the event fires
};

// Splits the stream into movement events; returns false when an interaction
// run is longer than two tokens (no event structure fits).
bool collect_events(const ActionSequence& actions, Heading initial_heading,
                    std::vector<MovementEvent>& events) {
  Heading heading = initial_heading;
  size_t i = 0;
  while (i < actions.size()) {
    Action a = actions[i];
    if (a == Action::turn_left || a == Action::turn_right) {
      heading = turn(heading, a);
      ++i;
      continue;
    }
    if (a == Action::stay) {
      ++i;
      continue;
    }
    if (a == Action::walk) {
      events.push_back({i, i + 1, true, heading});
      ++i;
      continue;
    }
    size_t j = i;
    while (j < actions.size() && actions[j] == a) ++j;
    if (j - i > 2) return false;
    events.push_back({i, j, false, heading});
    i = j;
  }
  return true;
}

bool preceded_by(const ActionSequence& actions, size_t at,
                 std::initializer_list<Action> pattern) {
  if (at < pattern.size()) return false;
  size_t start = at - pattern.size();
  size_t k = 0;
  for (Action a : pattern)
    if (actions[start + k++] != a) return false;
  return true;
}

bool axis_horizontal(Heading h) { return h == Heading::east || h == Heading::west; }

}  // namespace

bool manner_satisfied(Adverb adverb, const ActionSequence& actions, Heading initial_heading) {
  if (adverb == Adverb::none) return true;

  std::vector<MovementEvent> events;
  bool well_formed = adverb == Adverb::while_zigzagging ||
                     collect_events(actions, initial_heading, events);
  if (!well_formed) return false;

  switch (adverb) {
    case Adverb::cautiously: {
      for (const MovementEvent& e : events)
        if (!preceded_by(actions, e.begin,
                         {Action::turn_left, Action::turn_right, Action::turn_right,
                          Action::turn_left}))
          return false;
      return true;
    }
    case Adverb::while_spinning: {
      for (const MovementEvent& e : events)
        if (!preceded_by(actions, e.begin,
                         {Action::turn_left, Action::turn_left, Action::turn_left,
                          Action::turn_left}))
          return false;
      return true;
    }
    case Adverb::hesitantly: {
      for (const MovementEvent& e : events)
        if (e.end >= actions.size() || actions[e.end] != Action::stay) return false;
      return true;
    }
    case Adverb::while_zigzagging: {
      // Walk legs must alternate axis every cell until one axis is spent;
      // interaction tokens are direction-bound and exempt, whatever their
      // run length, so the event structure is not required here.
      Heading heading = initial_heading;
      std::vector<bool> axes;
      for (Action a : actions) {
        if (a == Action::turn_left || a == Action::turn_right) heading = turn(heading, a);
        if (a == Action::walk) axes.push_back(axis_horizontal(heading));
      }
      for (size_t i = 0; i + 1 < axes.size(); ++i) {
        if (axes[i + 1] != axes[i]) continue;
        for (size_t j = i + 1; j < axes.size(); ++j)
          if (axes[j] != axes[i]) return false;
      }
      return true;
    }
    default:
      return true;
  }
}

}  // namespace gridforge
