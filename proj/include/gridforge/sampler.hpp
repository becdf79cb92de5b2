#pragma once

#include <optional>
#include <vector>

#include "gridforge/domain.hpp"
#include "gridforge/grammar.hpp"
#include "gridforge/rng.hpp"
#include "gridforge/world.hpp"

namespace gridforge {

// One agent/target geometry: compass direction from agent to target plus
// Manhattan distance. Straight directions span 1..d-1; diagonals span
// 2..2(d-1) with at least one cell on each axis.
struct SituationSlot {
  Direction8 direction = Direction8::north;
  int distance = 1;

  friend auto operator<=>(const SituationSlot&, const SituationSlot&) = default;
};

enum class HeadingPolicy : uint8_t { fixed, uniform };

struct SamplerConfig {
  int samples_per_slot = 1;
  HeadingPolicy heading_policy = HeadingPolicy::fixed;
  Heading fixed_heading = Heading::east;

  void validate() const;
  friend bool operator==(const SamplerConfig&, const SamplerConfig&) = default;
};

// Object inventory for one world: the target (plus its contrasting
// size-distractor when the command carries a size word) is mandatory; half of
// the optional groups are drawn at random. Groups are placed whole, so the
// paired distractors of size-modified commands stay together.
struct GenerationRecipe {
  ObjectSpec target;
  std::optional<ObjectSpec> contrast;          // same shape and color, opposite size side
  std::vector<std::vector<ObjectSpec>> optional_groups;
  size_t select_count = 0;                     // groups to draw from optional_groups

  size_t max_objects() const;
};

// All geometries for a d x d grid, each exactly once, in (direction,
// distance) order. Requires d >= 3.
std::vector<SituationSlot> enumerate_slots(int grid_size);

// Target objects compatible with the description: the mentioned color or all
// colors, and sizes restricted so a size word keeps a valid contrast
// (small: 1..3, big: 2..4).
std::vector<ObjectSpec> enumerate_target_specs(const SemanticFrame& frame);

// Distractor inventory for a fixed target object. Shape-only descriptions get
// one random object per other shape; color+shape descriptions one random-size
// object per other color/shape pair; size-modified descriptions a pair of
// differently sized objects per color/shape pair, with pairs sharing the
// target's shape (and color, when mentioned) strictly on the far side of the
// target's size. Half of the candidate groups are drawn.
GenerationRecipe build_recipe(const SemanticFrame& frame, const ObjectSpec& target, Rng& rng);

// Convenience overload sampling the target spec uniformly first.
GenerationRecipe build_recipe(const SemanticFrame& frame, Rng& rng);

// Places agent and target per the slot, then the recipe objects on distinct
// free cells. Returns nullopt when the grid cannot hold the recipe.
std::optional<WorldState> sample_world(const SemanticFrame& frame, const SituationSlot& slot,
                                       const GenerationRecipe& recipe, Rng& rng, int grid_size,
                                       const SamplerConfig& config);

// Cell of the unique object the description resolves to, if any. A size word
// selects the strictly smallest/largest among the shape(+color) matches.
std::optional<Cell> resolve_referent(const SemanticFrame& frame, const WorldState& world);

// True iff the description resolves uniquely and to the designated target.
bool validate_world(const SemanticFrame& frame, const WorldState& world);

}  // namespace gridforge
