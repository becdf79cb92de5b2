#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gridforge/domain.hpp"
#include "gridforge/grammar.hpp"

namespace gridforge {

struct ObjectSpec {
  Shape shape = Shape::circle;
  Color color = Color::red;
  int size = 1;  // 1..4

  // Sizes 1-2 are light, 3-4 heavy; heavy objects take two push/pull tokens
  // per cell moved.
  bool heavy() const { return size >= 3; }

  friend auto operator<=>(const ObjectSpec&, const ObjectSpec&) = default;
};

struct Pose {
  int row = 0;
  int col = 0;
  Heading heading = Heading::east;

  Cell cell() const { return {row, col}; }
  friend bool operator==(const Pose&, const Pose&) = default;
};

struct PlacedObject {
  Cell cell;
  ObjectSpec spec;
  friend auto operator<=>(const PlacedObject&, const PlacedObject&) = default;
};

// Immutable-by-convention grid state: d x d cells, one agent, at most one
// object per cell. target_cell designates the referent of the paired command;
// it is metadata on top of the grid and follows the object when the executor
// moves it.
struct WorldState {
  int grid_size = 6;
  Pose agent;
  std::vector<PlacedObject> objects;  // kept sorted by cell
  std::optional<Cell> target_cell;

  bool in_bounds(Cell c) const {
    return c.row >= 0 && c.row < grid_size && c.col >= 0 && c.col < grid_size;
  }
  const ObjectSpec* object_at(Cell c) const;
  void add_object(Cell c, const ObjectSpec& spec);  // throws DatasetError on conflicts
  void remove_object(Cell c);
  void sort_objects();

  friend bool operator==(const WorldState&, const WorldState&) = default;
};

// d x d x 16 one-hot encoding: agent presence, 4 headings, 4 colors,
// 3 shapes, 4 sizes.
struct StateTensor {
  static constexpr int kChannels = 16;
  static constexpr int kAgent = 0;
  static constexpr int kHeadingBase = 1;  // north, east, south, west
  static constexpr int kColorBase = 5;    // red, green, blue, yellow
  static constexpr int kShapeBase = 9;    // circle, square, cylinder
  static constexpr int kSizeBase = 12;    // sizes 1..4

  int grid_size = 0;
  std::vector<uint8_t> values;  // row-major (row, col, channel)

  uint8_t at(int row, int col, int channel) const {
    return values[(static_cast<size_t>(row) * grid_size + col) * kChannels + channel];
  }
  uint8_t& at(int row, int col, int channel) {
    return values[(static_cast<size_t>(row) * grid_size + col) * kChannels + channel];
  }
};

StateTensor encode_state(const WorldState& world);

// Inverse of encode_state. The tensor does not carry the target designation
// (the 16 channels describe only the grid and agent), so the caller supplies
// it when round-tripping a full state.
WorldState decode_state(const StateTensor& tensor, std::optional<Cell> target_cell = {});

// L_turn is 90 degrees counterclockwise, R_turn clockwise.
Heading turn(Heading heading, Action token);

using ActionSequence = std::vector<Action>;

ActionSequence actions_from_strings(const std::vector<std::string>& tokens);
std::vector<std::string> actions_to_strings(const ActionSequence& actions);

struct TrajectoryStep {
  Pose pose;
  std::vector<PlacedObject> objects;
  std::optional<Cell> target_cell;
};

struct ExecutionResult {
  bool ok = false;
  size_t error_index = 0;  // token index of the failure when !ok
  std::string error;
  WorldState final_state;
  std::vector<TrajectoryStep> steps;  // state after each executed token

  // Agent pose after the last successfully executed token.
  const Pose& last_pose(const WorldState& initial) const {
    return steps.empty() ? initial.agent : steps.back().pose;
  }
};

// Deterministic simulation. walk moves one cell along the heading (objects
// never block walking); push moves the object under the agent along the
// heading, pull moves it the opposite way, agent riding along; a heavy object
// moves one cell per *pair* of consecutive push (pull) tokens. Failures stop
// the simulation: walking off-grid, interacting with no object underfoot,
// moving an object into a wall or an occupied cell, or leaving a heavy
// object's pair incomplete ("half-move").
ExecutionResult execute(const WorldState& world, const ActionSequence& actions);

// Verb goal test over initial/final states. walk: the agent ends on the
// initial target cell. push/pull: the target object moved only along one
// direction and ended flush against a wall or another object; a target that
// never moved counts when the agent stands on it and the cell beyond (along
// the agent's heading for push, opposite for pull) is blocked.
bool goal_satisfied(const SemanticFrame& frame, const WorldState& initial,
                    const WorldState& final_state);

// Manner test on the token stream alone. A movement event is one walk token
// or a maximal run of 1-2 identical push/pull tokens. initial_heading feeds
// the zigzag direction simulation.
bool manner_satisfied(Adverb adverb, const ActionSequence& actions,
                      Heading initial_heading = Heading::east);

}  // namespace gridforge
