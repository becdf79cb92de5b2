#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gridforge/dataset_io.hpp"

namespace gridforge {

// Token-for-token equality with any acceptable gold sequence.
bool exact_match(const ActionSequence& prediction, const std::vector<ActionSequence>& golds);

// Executor-verified success: the prediction runs without error, fulfills the
// verb goal, and respects the adverb manner.
bool semantic_match(const ActionSequence& prediction, const SemanticFrame& frame,
                    const WorldState& world);

// Probability of success when picking an object uniformly at random and
// navigating to it correctly: 1 / number of objects.
double chance_level(const WorldState& world);

// True when the executed prediction (up to its last valid step) leaves the
// agent in the target's row or column.
bool row_col_analysis(const ActionSequence& prediction, const WorldState& world);

struct Prediction {
  uint64_t id = 0;
  ActionSequence actions;
};

// JSON-lines file, one {"id": N, "actions": [tokens]} record per line.
// Throws DatasetError on duplicate ids or unknown action tokens.
std::vector<Prediction> load_predictions(const std::string& path);

struct MatchCounter {
  size_t total = 0;
  size_t exact = 0;
  size_t semantic = 0;

  double exact_pct() const { return total ? 100.0 * exact / total : 0.0; }
  double semantic_pct() const { return total ? 100.0 * semantic / total : 0.0; }
};

struct ReferredTargetRow {
  MatchCounter matches;
  double chance_pct_sum = 0.0;  // averaged per example

  double chance_pct() const {
    return matches.total ? chance_pct_sum / matches.total : 0.0;
  }
};

struct SplitScore {
  MatchCounter matches;
  std::map<std::string, ReferredTargetRow> referred_targets;
  std::map<int, MatchCounter> by_length;  // keyed by primary gold length
  size_t row_or_column = 0;               // novel_direction analysis

  double row_or_column_pct() const {
    return matches.total ? 100.0 * row_or_column / matches.total : 0.0;
  }
};

struct ScoreReport {
  std::map<std::string, SplitScore> splits;
  size_t predictions = 0;
  size_t missing = 0;  // dataset examples without a prediction
};

// Scores every prediction against its example. Throws DatasetError when a
// prediction references an unknown id.
ScoreReport score(const Dataset& dataset, const std::vector<Prediction>& predictions);

nlohmann::json score_to_json(const ScoreReport& report);
std::string render_score(const ScoreReport& report);

}  // namespace gridforge
