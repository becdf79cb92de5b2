#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gridforge/dataset_io.hpp"
#include "gridforge/generate.hpp"
#include "gridforge/planner.hpp"
#include "support/temp_dir.hpp"

using namespace gridforge;
using test_support::TempDir;

namespace {

SuiteConfig desk_suite() {
  SuiteConfig config;
  config.name = "compositional";
  config.grid_size = 4;
  config.grammar.verbs = {Verb::walk, Verb::push};
  config.grammar.adverbs = {Adverb::hesitantly};
  config.grammar.colors = {Color::red, Color::green};
  config.grammar.shapes = {Shape::circle, Shape::square};
  config.splits.enabled = {split_names::kRandom, split_names::kRedSquares,
                           split_names::kNovelDirection};
  config.splits.dev_size = 20;
  config.splits.random_test_cap = 60;
  return config;
}

Dataset desk_dataset(uint64_t seed = 9) {
  SuiteConfig config = desk_suite();
  return make_dataset(config, seed, generate_suite(config, seed, 2));
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_CASE("write/read round-trips the dataset byte for byte") {
  TempDir tmp;
  Dataset ds = desk_dataset();
  std::string first = tmp.file("a.json");
  write_dataset(ds, first);

  Dataset back = read_dataset(first);
  CHECK(back.header == ds.header);
  REQUIRE(back.splits.size() == ds.splits.size());
  for (const auto& [name, xs] : ds.splits) {
    REQUIRE(back.splits.count(name));
    const auto& ys = back.splits[name];
    REQUIRE(ys.size() == xs.size());
    for (size_t i = 0; i < xs.size(); ++i) {
      CHECK(ys[i].id == xs[i].id);
      CHECK(ys[i].command == xs[i].command);
      CHECK(ys[i].frame == xs[i].frame);
      CHECK(ys[i].world == xs[i].world);
      CHECK(ys[i].golds == xs[i].golds);
      CHECK(ys[i].meta.split == xs[i].meta.split);
      CHECK(ys[i].meta.referred_target == xs[i].meta.referred_target);
    }
  }

  std::string second = tmp.file("b.json");
  write_dataset(back, second);
  CHECK(slurp(first) == slurp(second));
}

TEST_CASE("equal config and seed produce byte-identical files") {
  TempDir tmp;
  write_dataset(desk_dataset(31), tmp.file("a.json"));
  write_dataset(desk_dataset(31), tmp.file("b.json"));
  write_dataset(desk_dataset(32), tmp.file("c.json"));
  CHECK(slurp(tmp.file("a.json")) == slurp(tmp.file("b.json")));
  CHECK(slurp(tmp.file("a.json")) != slurp(tmp.file("c.json")));
}

TEST_CASE("a hand-built two-example file parses with verified golds") {
  TempDir tmp;
  Dataset ds;
  ds.header.suite = "compositional";
  ds.header.grid_size = 4;
  ds.header.grammar_config_hash = "manual";
  ds.header.master_seed = 0;
  ds.header.kshot_k = 0;

  for (int i = 0; i < 2; ++i) {
    Example e;
    e.id = static_cast<uint64_t>(i);
    e.command = {"walk", "to", "the", "circle"};
    e.frame = parse(e.command);
    e.world.grid_size = 4;
    e.world.agent = {0, 0, Heading::east};
    e.world.add_object({0, 2 + i}, {Shape::circle, Color::red, 1});
    e.world.target_cell = Cell{0, 2 + i};
    e.golds = gold_set(e.frame, e.world);
    e.meta.referred_target = "circle";
    e.meta.target_spec = {Shape::circle, Color::red, 1};
    e.meta.target_cell = *e.world.target_cell;
    e.meta.direction = Direction8::east;
    e.meta.distance = 2 + i;
    e.meta.gold_length = static_cast<int>(e.golds.front().size());
    e.meta.split = "train";
    ds.splits["train"].push_back(std::move(e));
  }

  std::string path = tmp.file("two.json");
  write_dataset(ds, path);
  Dataset back = read_dataset(path);
  CHECK(back.splits["train"].size() == 2);
  CHECK(verify_dataset(back).empty());
}

TEST_CASE("a freshly generated dataset verifies clean") {
  Dataset ds = desk_dataset();
  CHECK(verify_dataset(ds).empty());
}

TEST_CASE("a tampered gold sequence reads fine but fails verification") {
  TempDir tmp;
  Dataset ds = desk_dataset();
  auto& train = ds.splits["train"];
  REQUIRE(!train.empty());
  train[0].golds.front().push_back(Action::walk);

  std::string path = tmp.file("tampered.json");
  write_dataset(ds, path);
  Dataset back = read_dataset(path);

  std::vector<Violation> violations = verify_dataset(back);
  REQUIRE(!violations.empty());
  bool flagged = false;
  for (const Violation& v : violations)
    if (v.id == train[0].id && (v.check == "execute" || v.check == "goal" || v.check == "meta"))
      flagged = true;
  CHECK(flagged);
}

TEST_CASE("a train example matching a held-out predicate is flagged as leakage") {
  Dataset ds = desk_dataset();
  auto& held = ds.splits["test:" + std::string(split_names::kRedSquares)];
  REQUIRE(!held.empty());
  Example moved = held.back();
  held.pop_back();
  moved.meta.split = "train";
  ds.splits["train"].push_back(moved);
  std::sort(ds.splits["train"].begin(), ds.splits["train"].end(),
            [](const Example& a, const Example& b) { return a.id < b.id; });

  std::vector<Violation> violations = verify_dataset(ds);
  bool leakage = false;
  for (const Violation& v : violations)
    if (v.check == "leakage" && v.id == moved.id) leakage = true;
  CHECK(leakage);
}

TEST_CASE("verification catches cross-split id collisions and content clones") {
  Dataset ds = desk_dataset();
  const Example& test_example = ds.splits["test:random"].front();
  Example clone = test_example;
  clone.meta.split = "train";
  ds.splits["train"].push_back(clone);

  std::vector<Violation> violations = verify_dataset(ds);
  bool id_hit = false, content_hit = false;
  for (const Violation& v : violations) {
    if (v.check == "disjoint" && v.detail.find("id") != std::string::npos) id_hit = true;
    if (v.check == "disjoint" && v.detail.find("content") != std::string::npos)
      content_hit = true;
  }
  CHECK(id_hit);
  CHECK(content_hit);
}

TEST_CASE("stats: a single-example dataset counts one unique example") {
  Dataset ds;
  ds.header.suite = "compositional";
  ds.header.grid_size = 4;
  Example e;
  e.id = 0;
  e.command = {"walk", "to", "the", "circle"};
  e.frame = parse(e.command);
  e.world.grid_size = 4;
  e.world.agent = {0, 0, Heading::east};
  e.world.add_object({0, 1}, {Shape::circle, Color::red, 1});
  e.world.target_cell = Cell{0, 1};
  e.golds = {{Action::walk}};
  e.meta.target_cell = {0, 1};
  e.meta.split = "train";
  ds.splits["train"].push_back(e);

  StatsReport report = dataset_stats(ds);
  CHECK(report.overall.examples == 1);
  CHECK(report.overall.unique_examples == 1);
  CHECK(report.splits["train"].commands == 1);
}

TEST_CASE("stats: held-out red squares never appear as train targets") {
  StatsReport report = dataset_stats(desk_dataset());
  const auto& train = report.splits.at("train");
  CHECK(train.targets.at("red square").placed == 0);
  CHECK(train.targets.at("green square").placed > 0);
  const auto& held = report.splits.at("test:" + std::string(split_names::kRedSquares));
  CHECK(held.targets.at("red square").placed == held.examples);
  CHECK(report.overall.examples > 0);
}

TEST_CASE("malformed files and version mismatches are reported") {
  TempDir tmp;
  {
    std::ofstream out(tmp.file("broken.json"));
    out << "{\"header\": {\"format_version\": 1}, \"splits\": {\"train\": [{\"id\": 0]}}";
  }
  CHECK_THROWS_AS(read_dataset(tmp.file("broken.json")), DatasetError);

  {
    std::ofstream out(tmp.file("future.json"));
    out << "{\"header\": {\"format_version\": 99, \"suite\": \"compositional\", "
           "\"grid_size\": 4, \"grammar_config_hash\": \"x\", \"master_seed\": 0}, "
           "\"splits\": {}}";
  }
  CHECK_THROWS_AS(read_dataset(tmp.file("future.json")), DatasetError);

  {
    std::ofstream out(tmp.file("badrecord.json"));
    out << "{\"header\": {\"format_version\": 1, \"suite\": \"compositional\", "
           "\"grid_size\": 4, \"grammar_config_hash\": \"x\", \"master_seed\": 0}, "
           "\"splits\": {\"train\": [{\"id\": 0}]}}";
  }
  CHECK_THROWS_AS(read_dataset(tmp.file("badrecord.json")), DatasetError);
}

TEST_CASE("empty splits survive the round trip") {
  TempDir tmp;
  Dataset ds;
  ds.header.suite = "compositional";
  ds.header.grid_size = 4;
  ds.header.grammar_config_hash = "x";
  ds.splits["train"];
  ds.splits["test:red_squares"];
  std::string path = tmp.file("empty.json");
  write_dataset(ds, path);
  Dataset back = read_dataset(path);
  CHECK(back.splits.size() == 2);
  CHECK(back.splits.count("test:red_squares") == 1);

  std::string again = tmp.file("empty2.json");
  write_dataset(back, again);
  CHECK(slurp(path) == slurp(again));
}
