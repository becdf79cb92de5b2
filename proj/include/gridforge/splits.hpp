#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gridforge/domain.hpp"
#include "gridforge/grammar.hpp"
#include "gridforge/world.hpp"

namespace gridforge {

namespace split_names {
inline constexpr const char* kRandom = "random";
inline constexpr const char* kYellowSquares = "yellow_squares";
inline constexpr const char* kRedSquares = "red_squares";
inline constexpr const char* kNovelDirection = "novel_direction";
inline constexpr const char* kRelativity = "relativity";
inline constexpr const char* kClassInference = "class_inference";
inline constexpr const char* kAdverbKshot = "adverb_kshot";
inline constexpr const char* kAdverbToVerb = "adverb_to_verb";
inline constexpr const char* kLength = "length";
}  // namespace split_names

// Holdout predicates carved from the compositional pool, in tie-break
// priority order.
inline const std::vector<std::string>& compositional_split_names() {
  static const std::vector<std::string> names{
      split_names::kYellowSquares, split_names::kRedSquares, split_names::kNovelDirection,
      split_names::kRelativity,    split_names::kClassInference, split_names::kAdverbKshot,
      split_names::kAdverbToVerb};
  return names;
}

struct ExampleMeta {
  std::string referred_target;  // description surface form, no determiner
  ObjectSpec target_spec;
  Cell target_cell;
  Direction8 direction = Direction8::north;
  int distance = 0;
  int gold_length = 0;  // primary (horizontal-first) gold length
  std::string split;
  bool kshot_carved = false;  // few-shot demonstration moved into train
};

struct Example {
  uint64_t id = 0;
  CommandTokens command;
  SemanticFrame frame;
  WorldState world;
  std::vector<ActionSequence> golds;  // primary first
  ExampleMeta meta;
};

// Target is a yellow square referred to with both its color and shape.
bool matches_yellow_squares(const Example& e);
// Target object is a red square, regardless of phrasing.
bool matches_red_squares(const Example& e);
// Target strictly to the agent's south-west.
bool matches_novel_direction(const Example& e);
// Target is a size-2 circle, the smallest circle present, and the command
// says "small".
bool matches_relativity(const Example& e);
// Verb is push and the target is a size-3 square.
bool matches_class_inference(const Example& e);
// Command carries the adverb "cautiously" (few-shot split).
bool matches_adverb_kshot(const Example& e);
// Adverb "while spinning" combined with verb "pull".
bool matches_adverb_to_verb(const Example& e);

bool matches_split(const std::string& name, const Example& e);

struct SplitConfig {
  std::vector<std::string> enabled;  // defaults depend on the suite
  int kshot_k = 1;
  size_t dev_size = 2000;
  size_t test_cap = 20000;         // per held-out split
  size_t random_test_cap = 20000;  // world-resample test of train commands
  int length_threshold = 15;       // length suite: train keeps gold length <= this
  uint64_t carve_seed = 7;
  std::vector<std::string> priority = compositional_split_names();

  void validate(bool length_suite) const;
  friend bool operator==(const SplitConfig&, const SplitConfig&) = default;
};

using SplitMap = std::map<std::string, std::vector<Example>>;

// Compositional assignment: held-out predicates claim test examples under the
// priority order; k cautious examples are carved back into train (nested
// under the seed, so the k=5 train contains the k=1 train) and overlength
// cautious test examples are dropped; dev and the random test are sampled
// from the remainder, every random-test command staying covered in train.
// Test splits are down-sampled to their caps. Split labels are written into
// each example's metadata.
SplitMap assign_compositional(std::vector<Example> pool, const SplitConfig& config,
                              uint64_t master_seed);

// Length assignment: test takes every example whose primary gold length
// exceeds the threshold; dev is sampled from train.
SplitMap assign_length(std::vector<Example> pool, const SplitConfig& config,
                       uint64_t master_seed);

}  // namespace gridforge
