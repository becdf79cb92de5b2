#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gridforge/config.hpp"
#include "gridforge/splits.hpp"

namespace gridforge {

struct DatasetHeader {
  int format_version = 1;
  std::string suite;  // "compositional" or "length"
  int grid_size = 6;
  std::string grammar_config_hash;
  uint64_t master_seed = 0;
  int kshot_k = 0;           // compositional suites
  int length_threshold = 0;  // length suites

  friend bool operator==(const DatasetHeader&, const DatasetHeader&) = default;
};

struct Dataset {
  DatasetHeader header;
  SplitMap splits;  // split label -> examples sorted by id

  size_t total_examples() const;
  const Example* find(uint64_t id) const;
};

Dataset make_dataset(const SuiteConfig& suite, uint64_t master_seed, SplitMap splits);

// Canonical JSON: object keys sorted, examples sorted by id, one example per
// line. Writing the result of read_dataset reproduces the file byte for byte.
void write_dataset(const Dataset& dataset, const std::string& path);
Dataset read_dataset(const std::string& path);  // streaming; throws DatasetError

nlohmann::json example_to_json(const Example& e);
Example example_from_json(const nlohmann::json& j);
nlohmann::json world_to_json(const WorldState& w);
WorldState world_from_json(const nlohmann::json& j);
nlohmann::json frame_to_json(const SemanticFrame& f);
SemanticFrame frame_from_json(const nlohmann::json& j);

// Hash of the (command, world) content, the identity used for
// train/test disjointness checks.
std::string example_content_hash(const Example& e);

struct ReferredTargetStats {
  size_t placed = 0;    // examples with this color/shape as the target
  size_t referred = 0;  // of those, command mentions the color
};

struct SplitStats {
  size_t examples = 0;
  size_t unique_examples = 0;  // distinct (command, golds, target cell)
  size_t commands = 0;
  double mean_worlds_per_command = 0.0;
  std::map<std::string, ReferredTargetStats> targets;  // keyed by "<color> <shape>"
};

struct StatsReport {
  std::map<std::string, SplitStats> splits;
  SplitStats overall;
};

StatsReport dataset_stats(const Dataset& dataset);
nlohmann::json stats_to_json(const StatsReport& report);
std::string render_stats(const StatsReport& report);

struct Violation {
  uint64_t id = 0;
  std::string check;
  std::string detail;
};

// Re-derives every stored guarantee: commands parse back to their frames,
// worlds validate, golds execute and satisfy goal and manner, metadata is
// consistent, splits are sound (no held-out example left in train beyond the
// flagged few-shot demonstrations) and disjoint by id and content hash.
std::vector<Violation> verify_dataset(const Dataset& dataset);

}  // namespace gridforge
