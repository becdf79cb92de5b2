#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "gridforge/planner.hpp"
#include "gridforge/rng.hpp"
#include "gridforge/sampler.hpp"

using namespace gridforge;

namespace {

constexpr Action W = Action::walk;
constexpr Action P = Action::push;
constexpr Action U = Action::pull;
constexpr Action S = Action::stay;
constexpr Action L = Action::turn_left;
constexpr Action R = Action::turn_right;

SemanticFrame make_frame(Verb verb, Adverb adverb = Adverb::none) {
  return {verb, adverb, SizeWord::none, std::nullopt, Shape::circle};
}

WorldState world_with_target(int d, Pose agent, Cell target, int size = 1) {
  WorldState w;
  w.grid_size = d;
  w.agent = agent;
  w.add_object(target, {Shape::circle, Color::red, size});
  w.target_cell = target;
  return w;
}

int count(const ActionSequence& s, Action a) {
  return static_cast<int>(std::count(s.begin(), s.end(), a));
}

}  // namespace

TEST_CASE("aligned straight-line walk needs no turns") {
  WorldState w = world_with_target(6, {1, 0, Heading::east}, {1, 2});
  CHECK(plan(make_frame(Verb::walk), w, Convention::horizontal_first) ==
        ActionSequence{W, W});
  CHECK(plan(make_frame(Verb::walk), w, Convention::vertical_first) == ActionSequence{W, W});
}

TEST_CASE("south-west target from an east-facing agent: 3 L_turns or 2 R_turns") {
  WorldState w = world_with_target(6, {2, 4, Heading::east}, {5, 1});

  ActionSequence horizontal = plan(make_frame(Verb::walk), w, Convention::horizontal_first);
  CHECK(count(horizontal, L) == 3);
  CHECK(count(horizontal, R) == 0);
  CHECK(horizontal == ActionSequence{L, L, W, W, W, L, W, W, W});

  ActionSequence vertical = plan(make_frame(Verb::walk), w, Convention::vertical_first);
  CHECK(count(vertical, R) == 2);
  CHECK(count(vertical, L) == 0);
  CHECK(vertical == ActionSequence{R, W, W, W, R, W, W, W});
}

TEST_CASE("heavy push interaction doubles the per-cell tokens") {
  // Two free cells between the square and the east wall.
  WorldState w;
  w.grid_size = 6;
  w.agent = {2, 1, Heading::east};
  w.add_object({2, 3}, {Shape::square, Color::green, 3});
  w.target_cell = Cell{2, 3};
  SemanticFrame frame{Verb::push, Adverb::none, SizeWord::none, std::nullopt, Shape::square};

  ActionSequence seq = plan(frame, w, Convention::horizontal_first);
  CHECK(seq == ActionSequence{W, W, P, P, P, P});
}

TEST_CASE("pull backs away from the arrival direction as far as possible") {
  WorldState w = world_with_target(6, {3, 0, Heading::east}, {3, 4}, 1);
  SemanticFrame frame = make_frame(Verb::pull);
  // Arrive facing east after 4 walks; pulling moves west, back across the
  // approach, until the west wall.
  ActionSequence seq = plan(frame, w, Convention::horizontal_first);
  CHECK(seq == ActionSequence{W, W, W, W, U, U, U, U});

  ExecutionResult run = execute(w, seq);
  REQUIRE(run.ok);
  CHECK(run.final_state.target_cell == Cell{3, 0});
  CHECK(goal_satisfied(frame, w, run.final_state));
}

TEST_CASE("an object already flush yields a bare approach") {
  WorldState w = world_with_target(4, {0, 0, Heading::east}, {0, 3}, 2);
  SemanticFrame frame = make_frame(Verb::push);
  ActionSequence seq = plan(frame, w, Convention::horizontal_first);
  CHECK(seq == ActionSequence{W, W, W});

  ExecutionResult run = execute(w, seq);
  REQUIRE(run.ok);
  CHECK(goal_satisfied(frame, w, run.final_state));
}

TEST_CASE("decorations wrap each movement event") {
  MarkedPlan walk_only{{W, 0}};
  CHECK(apply_adverb(walk_only, Adverb::cautiously) == ActionSequence{L, R, R, L, W});
  CHECK(apply_adverb(walk_only, Adverb::hesitantly) == ActionSequence{W, S});
  CHECK(apply_adverb(walk_only, Adverb::none) == ActionSequence{W});
  CHECK(apply_adverb(walk_only, Adverb::while_zigzagging) == ActionSequence{W});

  MarkedPlan two_walks{{W, 0}, {W, 1}};
  CHECK(apply_adverb(two_walks, Adverb::while_spinning) ==
        ActionSequence{L, L, L, L, W, L, L, L, L, W});
  CHECK(apply_adverb(two_walks, Adverb::hesitantly) == ActionSequence{W, S, W, S});

  MarkedPlan heavy_pair{{W, 0}, {P, 1}, {P, 1}};
  CHECK(apply_adverb(heavy_pair, Adverb::cautiously) ==
        ActionSequence{L, R, R, L, W, L, R, R, L, P, P});
  CHECK(apply_adverb(heavy_pair, Adverb::hesitantly) == ActionSequence{W, S, P, P, S});
}

TEST_CASE("adverb length laws on walk-only plans") {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    int d = 6;
    Pose agent{rng.below_int(d), rng.below_int(d), Heading::east};
    Cell target{rng.below_int(d), rng.below_int(d)};
    if (agent.cell() == target) continue;
    int k = std::abs(target.row - agent.row) + std::abs(target.col - agent.col);

    for (Convention conv : {Convention::horizontal_first, Convention::vertical_first}) {
      WorldState w = world_with_target(d, agent, target);
      size_t base = plan(make_frame(Verb::walk), w, conv).size();
      CHECK(plan(make_frame(Verb::walk, Adverb::cautiously), w, conv).size() == base + 4 * k);
      CHECK(plan(make_frame(Verb::walk, Adverb::while_spinning), w, conv).size() ==
            base + 4 * k);
      CHECK(plan(make_frame(Verb::walk, Adverb::hesitantly), w, conv).size() == base + k);
    }
  }
}

TEST_CASE("zigzag alternates axes until one is exhausted") {
  WorldState w = world_with_target(8, {0, 0, Heading::east}, {3, 5});
  SemanticFrame frame = make_frame(Verb::walk, Adverb::while_zigzagging);

  for (Convention conv : {Convention::horizontal_first, Convention::vertical_first}) {
    ActionSequence seq = plan(frame, w, conv);
    CHECK(manner_satisfied(Adverb::while_zigzagging, seq, w.agent.heading));
    ExecutionResult run = execute(w, seq);
    REQUIRE(run.ok);
    CHECK(run.final_state.agent.cell() == Cell{3, 5});

    // Walk directions alternate strictly for the first 2*min(a,b) steps.
    Heading heading = w.agent.heading;
    std::vector<bool> axes;
    for (Action a : seq) {
      heading = turn(heading, a);
      if (a == W)
        axes.push_back(heading == Heading::east || heading == Heading::west);
    }
    for (size_t i = 0; i + 1 < 6; ++i) CHECK(axes[i] != axes[i + 1]);
    CHECK(axes.front() == (conv == Convention::horizontal_first));
  }
}

TEST_CASE("gold sets: straight targets one plan, diagonal targets two") {
  WorldState straight = world_with_target(6, {2, 0, Heading::east}, {2, 3});
  CHECK(gold_set(make_frame(Verb::walk), straight).size() == 1);

  WorldState diagonal = world_with_target(6, {1, 1, Heading::east}, {4, 3});
  auto golds = gold_set(make_frame(Verb::walk), diagonal);
  REQUIRE(golds.size() == 2);
  CHECK(golds[0] != golds[1]);
  for (const ActionSequence& g : golds) {
    ExecutionResult run = execute(diagonal, g);
    REQUIRE(run.ok);
    CHECK(run.final_state.agent.cell() == Cell{4, 3});
  }

  auto zigzag = gold_set(make_frame(Verb::walk, Adverb::while_zigzagging), diagonal);
  CHECK(zigzag.size() == 2);
  for (const ActionSequence& g : zigzag)
    CHECK(manner_satisfied(Adverb::while_zigzagging, g, Heading::east));
}

TEST_CASE("both conventions spend the same number of walk tokens") {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    Pose agent{rng.below_int(6), rng.below_int(6), kAllHeadings[rng.below(4)]};
    Cell target{rng.below_int(6), rng.below_int(6)};
    if (agent.cell() == target) continue;
    WorldState w = world_with_target(6, agent, target);
    ActionSequence h = plan(make_frame(Verb::walk), w, Convention::horizontal_first);
    ActionSequence v = plan(make_frame(Verb::walk), w, Convention::vertical_first);
    CHECK(count(h, W) == count(v, W));
  }
}

TEST_CASE("planner output round-trips through the executor on sampled worlds") {
  GrammarConfig grammar;
  auto commands = enumerate_commands(grammar);
  auto slots = enumerate_slots(6);
  SamplerConfig config;
  Rng rng(41);

  int checked = 0;
  while (checked < 2000) {
    SemanticFrame frame = parse(commands[rng.below(commands.size())]);
    GenerationRecipe recipe = build_recipe(frame, rng);
    auto world = sample_world(frame, slots[rng.below(slots.size())], recipe, rng, 6, config);
    if (!world) continue;
    ++checked;
    for (const ActionSequence& gold : gold_set(frame, *world)) {
      ExecutionResult run = execute(*world, gold);
      REQUIRE(run.ok);
      CHECK(goal_satisfied(frame, *world, run.final_state));
      CHECK(manner_satisfied(frame.adverb, gold, world->agent.heading));
    }
  }
}

TEST_CASE("planning requires a resolvable world") {
  WorldState w = world_with_target(4, {0, 0, Heading::east}, {2, 2});
  w.add_object({3, 3}, {Shape::circle, Color::blue, 1});  // second circle: ambiguous
  CHECK_THROWS_AS(plan(make_frame(Verb::walk), w, Convention::horizontal_first),
                  PlanningError);
}

TEST_CASE("interaction verbs on the agent's own cell cannot be planned") {
  WorldState w;
  w.grid_size = 4;
  w.agent = {1, 1, Heading::east};
  w.add_object({1, 1}, {Shape::circle, Color::red, 1});
  w.target_cell = Cell{1, 1};
  CHECK_THROWS_AS(plan(make_frame(Verb::push), w, Convention::horizontal_first),
                  PlanningError);
  // A walk command is already satisfied: the empty plan is its gold.
  CHECK(plan(make_frame(Verb::walk), w, Convention::horizontal_first).empty());
}
