#include "gridforge/sampler.hpp"

#include <algorithm>
#include <cassert>

namespace gridforge {

void SamplerConfig::validate() const {
  if (samples_per_slot < 1) throw ConfigError("sampler: samples_per_slot must be >= 1");
}

size_t GenerationRecipe::max_objects() const {
  size_t n = 1 + (contrast ? 1 : 0);
  std::vector<size_t> sizes;
  sizes.reserve(optional_groups.size());
  for (const auto& g : optional_groups) sizes.push_back(g.size());
  std::sort(sizes.rbegin(), sizes.rend());
  for (size_t i = 0; i < select_count && i < sizes.size(); ++i) n += sizes[i];
  return n;
}

std::vector<SituationSlot> enumerate_slots(int grid_size) {
  if (grid_size < 3) throw ConfigError("slots: grid size must be >= 3");
  std::vector<SituationSlot> slots;
  for (Direction8 dir : kAllDirections) {
    if (is_diagonal(dir)) {
      for (int dist = 2; dist <= 2 * (grid_size - 1); ++dist) slots.push_back({dir, dist});
    } else {
      for (int dist = 1; dist <= grid_size - 1; ++dist) slots.push_back({dir, dist});
    }
  }
  std::sort(slots.begin(), slots.end());
  return slots;
}

std::vector<ObjectSpec> enumerate_target_specs(const SemanticFrame& frame) {
  std::vector<Color> colors;
  if (frame.color)
    colors = {*frame.color};
  else
    colors.assign(kAllColors.begin(), kAllColors.end());

  int lo = kMinObjectSize, hi = kMaxObjectSize;
  if (frame.size == SizeWord::small) hi = kMaxObjectSize - 1;  // room for a larger contrast
  if (frame.size == SizeWord::big) lo = kMinObjectSize + 1;    // room for a smaller contrast

  std::vector<ObjectSpec> specs;
  for (Color c : colors)
    for (int s = lo; s <= hi; ++s) specs.push_back({frame.shape, c, s});
  return specs;
}

namespace {

int random_size(Rng& rng) { return kMinObjectSize + rng.below_int(kMaxObjectSize); }

Color random_color(Rng& rng) { return kAllColors[rng.below(kAllColors.size())]; }

// Two distinct sizes drawn from [lo, hi], random order.
std::optional<std::pair<int, int>> distinct_sizes(int lo, int hi, Rng& rng) {
  int n = hi - lo + 1;
  if (n < 2) return std::nullopt;
  int a = lo + rng.below_int(n);
  int b = lo + rng.below_int(n - 1);
  if (b >= a) ++b;
  return std::make_pair(a, b);
}

}  // namespace

GenerationRecipe build_recipe(const SemanticFrame& frame, const ObjectSpec& target, Rng& rng) {
  if (target.shape != frame.shape || (frame.color && target.color != *frame.color))
    throw ConfigError("recipe: target spec does not fit the description");

  GenerationRecipe recipe;
  recipe.target = target;

  if (frame.size == SizeWord::none) {
    if (!frame.color) {
      // Shape only: one random object per other shape.
      for (Shape s : kAllShapes) {
        if (s == frame.shape) continue;
        recipe.optional_groups.push_back({ObjectSpec{s, random_color(rng), random_size(rng)}});
      }
    } else {
      // Color and shape: one random-size object per other color/shape pair.
      for (Color c : kAllColors)
        for (Shape s : kAllShapes) {
          if (c == target.color && s == target.shape) continue;
          recipe.optional_groups.push_back({ObjectSpec{s, c, random_size(rng)}});
        }
    }
    recipe.select_count = recipe.optional_groups.size() / 2;
    return recipe;
  }

  // Size mentioned: the mandatory contrast straddles the target, and every
  // pair sharing the constrained shape(+color) sits strictly on the far side.
  bool want_larger = frame.size == SizeWord::small;
  int side_lo = want_larger ? target.size + 1 : kMinObjectSize;
  int side_hi = want_larger ? kMaxObjectSize : target.size - 1;
  if (side_lo > side_hi) throw ConfigError("recipe: no contrasting size available");
  recipe.contrast =
      ObjectSpec{target.shape, target.color, side_lo + rng.below_int(side_hi - side_lo + 1)};

  for (Color c : kAllColors)
    for (Shape s : kAllShapes) {
      if (c == target.color && s == target.shape) continue;
      bool constrained = s == frame.shape && !frame.color;
      auto sizes = constrained ? distinct_sizes(side_lo, side_hi, rng)
                               : distinct_sizes(kMinObjectSize, kMaxObjectSize, rng);
      if (!sizes) continue;  // side range too narrow for a pair
      recipe.optional_groups.push_back(
          {ObjectSpec{s, c, sizes->first}, ObjectSpec{s, c, sizes->second}});
    }
  // Half of the candidate pairs, counted over the full color/shape lattice
  // minus the target's own pair, keeps the world size fixed even when some
  // constrained pairs are infeasible.
  size_t lattice = kAllColors.size() * kAllShapes.size() - 1;
  recipe.select_count = std::min(lattice / 2, recipe.optional_groups.size());
  return recipe;
}

GenerationRecipe build_recipe(const SemanticFrame& frame, Rng& rng) {
  std::vector<ObjectSpec> specs = enumerate_target_specs(frame);
  return build_recipe(frame, specs[rng.below(specs.size())], rng);
}

namespace {

// Uniform draw of an (agent, target) cell pair realizing the slot.
std::optional<std::pair<Cell, Cell>> place_pair(const SituationSlot& slot, int d, Rng& rng) {
  Cell unit = direction_delta(slot.direction);
  int dr, dc;
  if (is_diagonal(slot.direction)) {
    int max_axis = d - 1;
    int lo = std::max(1, slot.distance - max_axis);
    int hi = std::min(max_axis, slot.distance - 1);
    if (lo > hi) return std::nullopt;
    int rows = lo + rng.below_int(hi - lo + 1);
    dr = unit.row * rows;
    dc = unit.col * (slot.distance - rows);
  } else {
    if (slot.distance > d - 1) return std::nullopt;
    dr = unit.row * slot.distance;
    dc = unit.col * slot.distance;
  }
  int row_lo = std::max(0, -dr), row_hi = std::min(d - 1, d - 1 - dr);
  int col_lo = std::max(0, -dc), col_hi = std::min(d - 1, d - 1 - dc);
  if (row_lo > row_hi || col_lo > col_hi) return std::nullopt;
  Cell agent{row_lo + rng.below_int(row_hi - row_lo + 1),
             col_lo + rng.below_int(col_hi - col_lo + 1)};
  Cell target{agent.row + dr, agent.col + dc};
  return std::make_pair(agent, target);
}

}  // namespace

std::optional<WorldState> sample_world(const SemanticFrame& frame, const SituationSlot& slot,
                                       const GenerationRecipe& recipe, Rng& rng, int grid_size,
                                       const SamplerConfig& config) {
  auto pair = place_pair(slot, grid_size, rng);
  if (!pair) return std::nullopt;
  auto [agent_cell, target_cell] = *pair;

  WorldState world;
  world.grid_size = grid_size;
  world.agent = {agent_cell.row, agent_cell.col,
                 config.heading_policy == HeadingPolicy::fixed
                     ? config.fixed_heading
                     : kAllHeadings[rng.below(kAllHeadings.size())]};
  world.add_object(target_cell, recipe.target);
  world.target_cell = target_cell;

  std::vector<size_t> group_ids(recipe.optional_groups.size());
  for (size_t i = 0; i < group_ids.size(); ++i) group_ids[i] = i;
  std::vector<size_t> chosen = rng.sample(group_ids, recipe.select_count);

  std::vector<ObjectSpec> to_place;
  if (recipe.contrast) to_place.push_back(*recipe.contrast);
  for (size_t g : chosen)
    for (const ObjectSpec& spec : recipe.optional_groups[g]) to_place.push_back(spec);

  std::vector<Cell> free_cells;
  free_cells.reserve(static_cast<size_t>(grid_size) * grid_size);
  for (int r = 0; r < grid_size; ++r)
    for (int c = 0; c < grid_size; ++c) {
      Cell cell{r, c};
      if (cell == agent_cell || cell == target_cell) continue;
      free_cells.push_back(cell);
    }
  if (free_cells.size() < to_place.size()) return std::nullopt;

  std::vector<Cell> spots = rng.sample(std::move(free_cells), to_place.size());
  for (size_t i = 0; i < to_place.size(); ++i) world.add_object(spots[i], to_place[i]);

  assert(validate_world(frame, world));
  return world;
}

std::optional<Cell> resolve_referent(const SemanticFrame& frame, const WorldState& world) {
  std::vector<const PlacedObject*> matches;
  for (const PlacedObject& o : world.objects) {
    if (o.spec.shape != frame.shape) continue;
    if (frame.color && o.spec.color != *frame.color) continue;
    matches.push_back(&o);
  }
  if (matches.empty()) return std::nullopt;

  if (frame.size == SizeWord::none) {
    if (matches.size() != 1) return std::nullopt;
    return matches[0]->cell;
  }

  int extreme = matches[0]->spec.size;
  for (const PlacedObject* o : matches)
    extreme = frame.size == SizeWord::small ? std::min(extreme, o->spec.size)
                                            : std::max(extreme, o->spec.size);
  const PlacedObject* unique = nullptr;
  for (const PlacedObject* o : matches) {
    if (o->spec.size != extreme) continue;
    if (unique) return std::nullopt;  // tied extreme: not unique
    unique = o;
  }
  return unique->cell;
}

bool validate_world(const SemanticFrame& frame, const WorldState& world) {
  if (!world.target_cell || !world.object_at(*world.target_cell)) return false;
  auto cell = resolve_referent(frame, world);
  return cell && *cell == *world.target_cell;
}

}  // namespace gridforge
