#include "gridforge/splits.hpp"

#include <algorithm>

#include "gridforge/rng.hpp"

namespace gridforge {

bool matches_yellow_squares(const Example& e) {
  return e.meta.target_spec.shape == Shape::square &&
         e.meta.target_spec.color == Color::yellow && e.frame.shape == Shape::square &&
         e.frame.color == Color::yellow;
}

bool matches_red_squares(const Example& e) {
  return e.meta.target_spec.shape == Shape::square && e.meta.target_spec.color == Color::red;
}

bool matches_novel_direction(const Example& e) {
  return e.meta.target_cell.row > e.world.agent.row &&
         e.meta.target_cell.col < e.world.agent.col;
}

bool matches_relativity(const Example& e) {
  if (e.meta.target_spec.shape != Shape::circle || e.meta.target_spec.size != 2) return false;
  if (std::find(e.command.begin(), e.command.end(), "small") == e.command.end()) return false;
  for (const PlacedObject& o : e.world.objects)
    if (o.spec.shape == Shape::circle && o.spec.size < 2) return false;
  return true;
}

bool matches_class_inference(const Example& e) {
  return e.frame.verb == Verb::push && e.meta.target_spec.shape == Shape::square &&
         e.meta.target_spec.size == 3;
}

bool matches_adverb_kshot(const Example& e) { return e.frame.adverb == Adverb::cautiously; }

bool matches_adverb_to_verb(const Example& e) {
  return e.frame.adverb == Adverb::while_spinning && e.frame.verb == Verb::pull;
}

bool matches_split(const std::string& name, const Example& e) {
  using namespace split_names;
  if (name == kYellowSquares) return matches_yellow_squares(e);
  if (name == kRedSquares) return matches_red_squares(e);
  if (name == kNovelDirection) return matches_novel_direction(e);
  if (name == kRelativity) return matches_relativity(e);
  if (name == kClassInference) return matches_class_inference(e);
  if (name == kAdverbKshot) return matches_adverb_kshot(e);
  if (name == kAdverbToVerb) return matches_adverb_to_verb(e);
  throw ConfigError("unknown split predicate: " + name);
}

void SplitConfig::validate(bool length_suite) const {
  if (kshot_k < 0) throw ConfigError("splits: kshot_k must be >= 0");
  if (length_suite) {
    if (length_threshold < 1) throw ConfigError("splits: length_threshold must be >= 1");
    for (const std::string& name : enabled)
      if (name != split_names::kLength)
        throw ConfigError("splits: length suite only supports the 'length' split");
    return;
  }
  for (const std::string& name : enabled) {
    if (name == split_names::kRandom) continue;
    if (std::find(priority.begin(), priority.end(), name) == priority.end())
      throw ConfigError("splits: unknown or misplaced split name: " + name);
  }
  for (const std::string& name : priority)
    (void)matches_split(name, Example{});  // throws on unknown names
}

namespace {

bool enabled(const SplitConfig& config, const std::string& name) {
  return std::find(config.enabled.begin(), config.enabled.end(), name) != config.enabled.end();
}

std::string test_label(const std::string& name) { return "test:" + name; }

// Uniform down-sample to `cap`, restoring id order afterwards.
void cap_examples(std::vector<Example>& xs, size_t cap, Rng& rng) {
  if (xs.size() <= cap) return;
  xs = rng.sample(std::move(xs), cap);
  std::sort(xs.begin(), xs.end(), [](const Example& a, const Example& b) { return a.id < b.id; });
}

void label(std::vector<Example>& xs, const std::string& split) {
  for (Example& e : xs) e.meta.split = split;
}

}  // namespace

SplitMap assign_compositional(std::vector<Example> pool, const SplitConfig& config,
                              uint64_t master_seed) {
  config.validate(false);

  // Claim held-out examples under the priority order; unclaimed ones stay in
  // the train bucket.
  std::vector<std::string> active;
  for (const std::string& name : config.priority)
    if (enabled(config, name)) active.push_back(name);

  SplitMap out;
  std::vector<Example> train;
  std::map<std::string, std::vector<Example>> held;
  for (Example& e : pool) {
    const std::string* claimed = nullptr;
    for (const std::string& name : active)
      if (matches_split(name, e)) {
        claimed = &name;
        break;
      }
    if (claimed)
      held[*claimed].push_back(std::move(e));
    else
      train.push_back(std::move(e));
  }
  pool.clear();

  // Few-shot carving: k cautious demonstrations move into train, drawn from a
  // fixed permutation so larger k nests smaller k.
  if (enabled(config, split_names::kAdverbKshot)) {
    auto& kshot = held[split_names::kAdverbKshot];
    Rng carve_rng(derive_seed(master_seed, "carve_kshot", config.carve_seed));
    std::vector<size_t> order(kshot.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    carve_rng.shuffle(order);
    size_t k = std::min<size_t>(config.kshot_k, kshot.size());
    std::vector<bool> carved(kshot.size(), false);
    for (size_t i = 0; i < k; ++i) carved[order[i]] = true;
    std::vector<Example> rest;
    rest.reserve(kshot.size() - k);
    for (size_t i = 0; i < kshot.size(); ++i) {
      if (carved[i]) {
        kshot[i].meta.kshot_carved = true;
        train.push_back(std::move(kshot[i]));
      } else {
        rest.push_back(std::move(kshot[i]));
      }
    }
    kshot = std::move(rest);
    std::sort(train.begin(), train.end(),
              [](const Example& a, const Example& b) { return a.id < b.id; });
  }

  // Dev set, then the world-resample random test: held-out world states for
  // commands that remain covered in train.
  std::map<std::string, size_t> train_per_command;
  for (const Example& e : train) ++train_per_command[join_tokens(e.command)];

  Rng dev_rng(derive_seed(master_seed, "dev", 0));
  std::vector<size_t> index(train.size());
  for (size_t i = 0; i < index.size(); ++i) index[i] = i;
  dev_rng.shuffle(index);

  std::vector<bool> taken(train.size(), false);
  std::vector<Example> dev;
  size_t want_dev = std::min(config.dev_size, train.size());
  for (size_t i = 0; i < index.size() && dev.size() < want_dev; ++i) {
    const Example& e = train[index[i]];
    if (e.meta.kshot_carved) continue;  // demonstrations must stay in train
    auto& left = train_per_command[join_tokens(e.command)];
    if (left <= 1) continue;
    --left;
    taken[index[i]] = true;
    dev.push_back(e);
  }

  std::vector<Example> random_test;
  if (enabled(config, split_names::kRandom)) {
    Rng rand_rng(derive_seed(master_seed, "test_random", 0));
    rand_rng.shuffle(index);
    for (size_t i = 0; i < index.size() && random_test.size() < config.random_test_cap; ++i) {
      if (taken[index[i]]) continue;
      const Example& e = train[index[i]];
      if (e.meta.kshot_carved) continue;
      auto& left = train_per_command[join_tokens(e.command)];
      if (left <= 1) continue;  // command must keep training coverage
      --left;
      taken[index[i]] = true;
      random_test.push_back(e);
    }
  }

  std::vector<Example> final_train;
  final_train.reserve(train.size());
  for (size_t i = 0; i < train.size(); ++i)
    if (!taken[i]) final_train.push_back(std::move(train[i]));

  auto by_id = [](std::vector<Example>& xs) {
    std::sort(xs.begin(), xs.end(),
              [](const Example& a, const Example& b) { return a.id < b.id; });
  };
  by_id(dev);
  by_id(random_test);

  label(final_train, "train");
  out["train"] = std::move(final_train);
  label(dev, "dev");
  out["dev"] = std::move(dev);
  if (enabled(config, split_names::kRandom)) {
    label(random_test, test_label(split_names::kRandom));
    out[test_label(split_names::kRandom)] = std::move(random_test);
  }

  for (const std::string& name : active) held[name];  // emit empty splits too

  // The few-shot test drops sequences longer than anything seen in training.
  int train_max = 0;
  for (const Example& e : out["train"]) train_max = std::max(train_max, e.meta.gold_length);
  if (enabled(config, split_names::kAdverbKshot)) {
    auto& kshot = held[split_names::kAdverbKshot];
    std::erase_if(kshot, [&](const Example& e) { return e.meta.gold_length > train_max; });
  }

  for (auto& [name, xs] : held) {
    Rng cap_rng(derive_seed(master_seed, "cap:" + name, 0));
    cap_examples(xs, config.test_cap, cap_rng);
    label(xs, test_label(name));
    out[test_label(name)] = std::move(xs);
  }
  return out;
}

SplitMap assign_length(std::vector<Example> pool, const SplitConfig& config,
                       uint64_t master_seed) {
  config.validate(true);

  std::vector<Example> train, test;
  for (Example& e : pool) {
    if (e.meta.gold_length > config.length_threshold)
      test.push_back(std::move(e));
    else
      train.push_back(std::move(e));
  }
  pool.clear();

  std::map<std::string, size_t> train_per_command;
  for (const Example& e : train) ++train_per_command[join_tokens(e.command)];

  Rng dev_rng(derive_seed(master_seed, "dev", 0));
  std::vector<size_t> index(train.size());
  for (size_t i = 0; i < index.size(); ++i) index[i] = i;
  dev_rng.shuffle(index);
  std::vector<bool> taken(train.size(), false);
  std::vector<Example> dev;
  size_t want_dev = std::min(config.dev_size, train.size());
  for (size_t i = 0; i < index.size() && dev.size() < want_dev; ++i) {
    const Example& e = train[index[i]];
    auto& left = train_per_command[join_tokens(e.command)];
    if (left <= 1) continue;
    --left;
    taken[index[i]] = true;
    dev.push_back(e);
  }

  std::vector<Example> final_train;
  final_train.reserve(train.size());
  for (size_t i = 0; i < train.size(); ++i)
    if (!taken[i]) final_train.push_back(std::move(train[i]));
  std::sort(dev.begin(), dev.end(),
            [](const Example& a, const Example& b) { return a.id < b.id; });

  SplitMap out;
  label(final_train, "train");
  label(dev, "dev");
  label(test, test_label(split_names::kLength));
  out["train"] = std::move(final_train);
  out["dev"] = std::move(dev);
  out[test_label(split_names::kLength)] = std::move(test);
  return out;
}

}  // namespace gridforge
