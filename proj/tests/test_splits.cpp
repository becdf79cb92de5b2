#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "gridforge/generate.hpp"

using namespace gridforge;

namespace {

Example make_example(const char* command_text, ObjectSpec target, Cell target_cell,
                     Pose agent = {0, 0, Heading::east}) {
  Example e;
  std::string word;
  for (const char* p = command_text;; ++p) {
    if (*p == ' ' || *p == '\0') {
      if (!word.empty()) e.command.push_back(word);
      word.clear();
      if (*p == '\0') break;
    } else {
      word.push_back(*p);
    }
  }
  e.frame = parse(e.command);
  e.world.grid_size = 6;
  e.world.agent = agent;
  e.world.add_object(target_cell, target);
  e.world.target_cell = target_cell;
  e.meta.target_spec = target;
  e.meta.target_cell = target_cell;
  return e;
}

// Shared desk-scale pool: every verb, the two adverbs the held-out splits
// need, red and yellow, "small", circles and squares.
const SuiteConfig& pool_config() {
  static const SuiteConfig config = [] {
    SuiteConfig c;
    c.name = "compositional";
    c.grid_size = 4;
    c.grammar.adverbs = {Adverb::cautiously, Adverb::while_spinning};
    c.grammar.colors = {Color::red, Color::yellow};
    c.grammar.sizes = {SizeWord::small};
    c.grammar.shapes = {Shape::circle, Shape::square};
    c.splits.enabled = compositional_split_names();
    c.splits.enabled.insert(c.splits.enabled.begin(), split_names::kRandom);
    c.splits.dev_size = 50;
    c.splits.random_test_cap = 200;
    return c;
  }();
  return config;
}

const std::vector<Example>& shared_pool() {
  static const std::vector<Example> pool = generate_pool(pool_config(), 77, 2);
  return pool;
}

}  // namespace

TEST_CASE("yellow-squares predicate needs both the color mention and the target") {
  Example hit = make_example("walk to the yellow square", {Shape::square, Color::yellow, 2},
                             {2, 2});
  CHECK(matches_yellow_squares(hit));

  Example no_color = make_example("walk to the small square", {Shape::square, Color::yellow, 2},
                                  {2, 2});
  CHECK_FALSE(matches_yellow_squares(no_color));

  Example big = make_example("push the big yellow square", {Shape::square, Color::yellow, 4},
                             {2, 2});
  CHECK(matches_yellow_squares(big));
}

TEST_CASE("red-squares predicate ignores the phrasing") {
  CHECK(matches_red_squares(
      make_example("walk to the square", {Shape::square, Color::red, 2}, {2, 2})));
  CHECK(matches_red_squares(
      make_example("walk to the red square", {Shape::square, Color::red, 1}, {2, 2})));
  CHECK_FALSE(matches_red_squares(
      make_example("walk to the red circle", {Shape::circle, Color::red, 1}, {2, 2})));
}

TEST_CASE("novel-direction predicate requires strictly south and west") {
  Example sw = make_example("walk to the circle", {Shape::circle, Color::red, 1}, {5, 1},
                            {2, 4, Heading::east});
  CHECK(matches_novel_direction(sw));
  Example south = make_example("walk to the circle", {Shape::circle, Color::red, 1}, {5, 4},
                               {2, 4, Heading::east});
  CHECK_FALSE(matches_novel_direction(south));
}

TEST_CASE("exactly the south-west geometries match the direction predicate") {
  std::set<int> sw_distances;
  for (const Example& e : shared_pool()) {
    bool predicted = e.meta.direction == Direction8::south_west;
    CHECK(matches_novel_direction(e) == predicted);
    if (predicted) sw_distances.insert(e.meta.distance);
  }
  CHECK(sw_distances == std::set<int>{2, 3, 4, 5, 6});  // diagonal range at d=4
}

TEST_CASE("relativity predicate: size-2 circle, smallest present, 'small' mentioned") {
  Example hit =
      make_example("walk to the small circle", {Shape::circle, Color::red, 2}, {2, 2});
  hit.world.add_object({3, 3}, {Shape::circle, Color::blue, 4});
  CHECK(matches_relativity(hit));

  Example big = make_example("walk to the big circle", {Shape::circle, Color::red, 2}, {2, 2});
  CHECK_FALSE(matches_relativity(big));  // no "small" in the command

  Example colored = make_example("walk to the small red circle",
                                 {Shape::circle, Color::red, 2}, {2, 2});
  colored.world.add_object({3, 3}, {Shape::circle, Color::red, 3});
  CHECK(matches_relativity(colored));  // color mention is fine

  Example smaller_exists = hit;
  smaller_exists.world.add_object({1, 1}, {Shape::circle, Color::green, 1});
  CHECK_FALSE(matches_relativity(smaller_exists));
}

TEST_CASE("class-inference predicate: push plus size-3 square") {
  CHECK(matches_class_inference(
      make_example("push the square", {Shape::square, Color::blue, 3}, {2, 2})));
  CHECK_FALSE(matches_class_inference(
      make_example("pull the square", {Shape::square, Color::blue, 3}, {2, 2})));
  CHECK_FALSE(matches_class_inference(
      make_example("push the circle", {Shape::circle, Color::blue, 3}, {2, 2})));
}

TEST_CASE("adverb predicates") {
  CHECK(matches_adverb_kshot(
      make_example("walk to the circle cautiously", {Shape::circle, Color::red, 1}, {2, 2})));
  CHECK(matches_adverb_to_verb(make_example("pull the circle while spinning",
                                            {Shape::circle, Color::red, 1}, {2, 2})));
  CHECK_FALSE(matches_adverb_to_verb(make_example("push the circle while spinning",
                                                  {Shape::circle, Color::red, 1}, {2, 2})));
  CHECK_FALSE(matches_adverb_to_verb(
      make_example("pull the circle cautiously", {Shape::circle, Color::red, 1}, {2, 2})));
}

TEST_CASE("assignment keeps train clean of every held-out predicate") {
  SplitMap splits = assign_compositional(shared_pool(), pool_config().splits, 77);

  REQUIRE(splits.count("train"));
  size_t carved = 0;
  for (const Example& e : splits["train"]) {
    for (const std::string& name : compositional_split_names()) {
      if (name == split_names::kAdverbKshot && e.meta.kshot_carved) continue;
      CHECK_FALSE(matches_split(name, e));
    }
    carved += e.meta.kshot_carved ? 1 : 0;
  }
  CHECK(carved == 1);  // default k

  for (const std::string& name : compositional_split_names()) {
    std::string label = "test:" + name;
    REQUIRE(splits.count(label));
    for (const Example& e : splits[label]) {
      CHECK(matches_split(name, e));
      CHECK(e.meta.split == label);
    }
  }

  SUBCASE("ids are disjoint between train and every test split") {
    std::set<uint64_t> train_ids;
    for (const Example& e : splits["train"]) train_ids.insert(e.id);
    for (const auto& [name, xs] : splits) {
      if (name == "train") continue;
      for (const Example& e : xs) CHECK(train_ids.count(e.id) == 0);
    }
  }

  SUBCASE("every random-test command keeps train coverage") {
    std::set<std::string> train_commands;
    for (const Example& e : splits["train"]) train_commands.insert(join_tokens(e.command));
    REQUIRE(splits.count("test:random"));
    CHECK(!splits["test:random"].empty());
    for (const Example& e : splits["test:random"])
      CHECK(train_commands.count(join_tokens(e.command)) == 1);
  }

  SUBCASE("priority: an example matching red-squares and novel-direction goes to red-squares") {
    bool overlap_seen = false;
    for (const Example& e : splits["test:" + std::string(split_names::kRedSquares)])
      if (matches_novel_direction(e)) overlap_seen = true;
    CHECK(overlap_seen);
    for (const Example& e : splits["test:" + std::string(split_names::kNovelDirection)])
      CHECK_FALSE(matches_red_squares(e));
  }

  SUBCASE("dev is sampled from the train distribution and disjoint") {
    REQUIRE(splits.count("dev"));
    CHECK(splits["dev"].size() == pool_config().splits.dev_size);
    for (const Example& e : splits["dev"]) {
      for (const std::string& name : compositional_split_names())
        CHECK_FALSE(matches_split(name, e));
    }
  }
}

TEST_CASE("few-shot carving: counts, nesting, and the degenerate k=0") {
  auto carve = [&](int k) {
    SplitConfig config = pool_config().splits;
    config.kshot_k = k;
    return assign_compositional(shared_pool(), config, 77);
  };

  SplitMap none = carve(0);
  for (const Example& e : none["train"]) CHECK_FALSE(e.frame.adverb == Adverb::cautiously);

  std::vector<int> ks{1, 5, 10, 50};
  std::vector<std::set<uint64_t>> carved_sets;
  for (int k : ks) {
    SplitMap splits = carve(k);
    std::set<uint64_t> carved;
    for (const Example& e : splits["train"])
      if (e.meta.kshot_carved) {
        CHECK(e.frame.adverb == Adverb::cautiously);
        carved.insert(e.id);
      }
    CHECK(carved.size() == static_cast<size_t>(k));
    carved_sets.push_back(carved);

    std::string label = "test:" + std::string(split_names::kAdverbKshot);
    for (const Example& e : splits[label]) CHECK(carved.count(e.id) == 0);
  }
  for (size_t i = 0; i + 1 < carved_sets.size(); ++i)
    CHECK(std::includes(carved_sets[i + 1].begin(), carved_sets[i + 1].end(),
                        carved_sets[i].begin(), carved_sets[i].end()));
}

TEST_CASE("few-shot test drops sequences longer than anything in train") {
  SplitMap splits = assign_compositional(shared_pool(), pool_config().splits, 77);
  int train_max = 0;
  for (const Example& e : splits["train"]) train_max = std::max(train_max, e.meta.gold_length);
  for (const Example& e : splits["test:" + std::string(split_names::kAdverbKshot)])
    CHECK(e.meta.gold_length <= train_max);
}

TEST_CASE("test splits honor the down-sampling cap") {
  SplitConfig config = pool_config().splits;
  config.test_cap = 100;
  SplitMap splits = assign_compositional(shared_pool(), config, 77);
  for (const std::string& name : compositional_split_names()) {
    const auto& xs = splits["test:" + name];
    CHECK(xs.size() <= 100);
    CHECK(std::is_sorted(xs.begin(), xs.end(),
                         [](const Example& a, const Example& b) { return a.id < b.id; }));
  }
}

TEST_CASE("length split cuts exactly at the threshold") {
  SuiteConfig config;
  config.name = "length";
  config.grid_size = 6;
  config.grammar.adverbs = {};
  config.grammar.colors = {Color::red, Color::green};
  config.grammar.shapes = {Shape::circle, Shape::square};
  config.grammar.adjective_orders = {AdjectiveOrder::size_first};
  config.splits.enabled = {split_names::kLength};
  config.splits.length_threshold = 8;
  config.splits.dev_size = 30;

  std::vector<Example> pool = generate_pool(config, 5, 2);
  SplitMap splits = assign_length(std::move(pool), config.splits, 5);

  int train_max = 0;
  for (const Example& e : splits["train"]) {
    CHECK(e.meta.gold_length <= 8);
    train_max = std::max(train_max, e.meta.gold_length);
  }
  CHECK(train_max == 8);  // the boundary length stays in train

  int test_min = 1 << 20;
  for (const Example& e : splits["test:length"]) {
    CHECK(e.meta.gold_length > 8);
    test_min = std::min(test_min, e.meta.gold_length);
  }
  CHECK(test_min == 9);

  std::set<std::string> train_commands, all_commands;
  for (const auto& [name, xs] : splits)
    for (const Example& e : xs) {
      all_commands.insert(join_tokens(e.command));
      if (name == "train") train_commands.insert(join_tokens(e.command));
    }
  CHECK(train_commands == all_commands);  // every command has short demonstrations
}

TEST_CASE("generation is invariant to the worker count") {
  SuiteConfig config = pool_config();
  std::vector<Example> serial = generate_pool(config, 123, 1);
  std::vector<Example> parallel = generate_pool(config, 123, 4);
  REQUIRE(serial.size() == parallel.size());
  for (size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].id == parallel[i].id);
    CHECK(serial[i].command == parallel[i].command);
    CHECK(serial[i].world == parallel[i].world);
    CHECK(serial[i].golds == parallel[i].golds);
  }
}
