#include "gridforge/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

namespace gridforge {

using nlohmann::json;

bool exact_match(const ActionSequence& prediction, const std::vector<ActionSequence>& golds) {
  return std::find(golds.begin(), golds.end(), prediction) != golds.end();
}

bool semantic_match(const ActionSequence& prediction, const SemanticFrame& frame,
                    const WorldState& world) {
  ExecutionResult run = execute(world, prediction);
  if (!run.ok) return false;
  return goal_satisfied(frame, world, run.final_state) &&
         manner_satisfied(frame.adverb, prediction, world.agent.heading);
}

double chance_level(const WorldState& world) {
  if (world.objects.empty()) throw DatasetError("chance level: world has no objects");
  return 1.0 / static_cast<double>(world.objects.size());
}

bool row_col_analysis(const ActionSequence& prediction, const WorldState& world) {
  if (!world.target_cell) throw DatasetError("row/col analysis: world has no target");
  ExecutionResult run = execute(world, prediction);
  // Failures count through their trajectory up to the last valid step.
  const Pose& pose = run.ok ? run.final_state.agent : run.last_pose(world);
  return pose.row == world.target_cell->row || pose.col == world.target_cell->col;
}

std::vector<Prediction> load_predictions(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DatasetError("cannot open predictions: " + path);
  std::vector<Prediction> out;
  std::unordered_set<uint64_t> seen;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
      Prediction p;
      p.id = j.at("id").get<uint64_t>();
      for (const json& token : j.at("actions")) {
        auto a = try_action_from_string(token.get<std::string>());
        if (!a)
          throw DatasetError("unknown action token '" + token.get<std::string>() + "'");
        p.actions.push_back(*a);
      }
      if (!seen.insert(p.id).second)
        throw DatasetError("duplicate prediction id " + std::to_string(p.id));
      out.push_back(std::move(p));
    } catch (const json::exception& e) {
      throw DatasetError("predictions line " + std::to_string(line_no) + ": " + e.what());
    } catch (const DatasetError& e) {
      throw DatasetError("predictions line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

ScoreReport score(const Dataset& dataset, const std::vector<Prediction>& predictions) {
  std::unordered_map<uint64_t, const Example*> by_id;
  for (const auto& [name, xs] : dataset.splits)
    for (const Example& e : xs) by_id[e.id] = &e;

  ScoreReport report;
  report.predictions = predictions.size();

  std::unordered_set<uint64_t> predicted;
  for (const Prediction& p : predictions) {
    auto it = by_id.find(p.id);
    if (it == by_id.end())
      throw DatasetError("prediction id " + std::to_string(p.id) + " not in the dataset");
    predicted.insert(p.id);
    const Example& e = *it->second;

    bool is_exact = exact_match(p.actions, e.golds);
    // Golds are executor-verified, so an exact match is semantic by
    // construction; skip the simulation for them.
    bool is_semantic = is_exact || semantic_match(p.actions, e.frame, e.world);

    SplitScore& split = report.splits[e.meta.split];
    ++split.matches.total;
    split.matches.exact += is_exact;
    split.matches.semantic += is_semantic;

    ReferredTargetRow& row = split.referred_targets[e.meta.referred_target];
    ++row.matches.total;
    row.matches.exact += is_exact;
    row.matches.semantic += is_semantic;
    row.chance_pct_sum += 100.0 * chance_level(e.world);

    MatchCounter& bin = split.by_length[e.meta.gold_length];
    ++bin.total;
    bin.exact += is_exact;
    bin.semantic += is_semantic;

    if (e.meta.split == "test:" + std::string(split_names::kNovelDirection))
      split.row_or_column += row_col_analysis(p.actions, e.world) ? 1 : 0;
  }

  size_t missing = 0;
  for (const auto& [id, e] : by_id) missing += predicted.count(id) ? 0 : 1;
  report.missing = missing;
  return report;
}

json score_to_json(const ScoreReport& report) {
  json splits = json::object();
  for (const auto& [name, s] : report.splits) {
    json targets = json::object();
    for (const auto& [form, row] : s.referred_targets)
      targets[form] = json{{"examples", row.matches.total},
                           {"exact_pct", row.matches.exact_pct()},
                           {"semantic_pct", row.matches.semantic_pct()},
                           {"chance_pct", row.chance_pct()}};
    json lengths = json::object();
    for (const auto& [len, bin] : s.by_length)
      lengths[std::to_string(len)] = json{{"examples", bin.total},
                                          {"exact_pct", bin.exact_pct()},
                                          {"semantic_pct", bin.semantic_pct()}};
    json entry{{"examples", s.matches.total},
               {"exact_pct", s.matches.exact_pct()},
               {"semantic_pct", s.matches.semantic_pct()},
               {"referred_targets", targets},
               {"length_histogram", lengths}};
    if (name == "test:" + std::string(split_names::kNovelDirection))
      entry["row_or_column_pct"] = s.row_or_column_pct();
    splits[name] = entry;
  }
  return json{{"splits", splits},
              {"predictions", report.predictions},
              {"missing_ids", report.missing}};
}

std::string render_score(const ScoreReport& report) {
  std::ostringstream out;
  char buf[160];
  out << "split                          n    exact%  semantic%\n";
  for (const auto& [name, s] : report.splits) {
    std::snprintf(buf, sizeof buf, "%-26s%7zu%10.2f%11.2f", name.c_str(), s.matches.total,
                  s.matches.exact_pct(), s.matches.semantic_pct());
    out << buf;
    if (name == "test:" + std::string(split_names::kNovelDirection)) {
      std::snprintf(buf, sizeof buf, "  (row-or-column %.2f%%)", s.row_or_column_pct());
      out << buf;
    }
    out << "\n";
  }
  for (const auto& [name, s] : report.splits) {
    if (s.referred_targets.empty()) continue;
    out << "\n" << name << " by referred target:\n";
    out << "  referred target              n    chance%    exact%\n";
    for (const auto& [form, row] : s.referred_targets) {
      std::snprintf(buf, sizeof buf, "  %-26s%5zu%11.2f%10.2f\n", form.c_str(),
                    row.matches.total, row.chance_pct(), row.matches.exact_pct());
      out << buf;
    }
  }
  std::snprintf(buf, sizeof buf, "\npredictions scored: %zu, dataset examples without one: %zu\n",
                report.predictions, report.missing);
  out << buf;
  return out.str();
}

}  // namespace gridforge
