#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gridforge/dataset_io.hpp"
#include "gridforge/eval.hpp"
#include "gridforge/generate.hpp"
#include "gridforge/hash.hpp"
#include "gridforge/planner.hpp"
#include "gridforge/sampler.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace gridforge;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;

struct GenerateFlags {
  std::string config_path;
  std::string out_dir;
  bool has_seed = false;
  uint64_t seed = 0;
  int grid_size = 0;
  int samples_per_slot = 0;
  int jobs = -1;
  int kshot_k = -1;
  std::vector<std::string> splits;
};

RunConfig resolve_config(const GenerateFlags& flags) {
  RunConfig config =
      flags.config_path.empty() ? RunConfig::defaults() : load_run_config(flags.config_path);

  if (const char* env = std::getenv("GRIDFORGE_SEED")) {
    try {
      config.master_seed = std::stoull(env);
    } catch (const std::exception&) {
      throw ConfigError("GRIDFORGE_SEED is not a number: " + std::string(env));
    }
  }
  if (flags.has_seed) config.master_seed = flags.seed;  // flag beats env beats config
  if (!flags.out_dir.empty()) config.out_dir = flags.out_dir;
  if (flags.grid_size > 0) config.compositional.grid_size = flags.grid_size;
  if (flags.samples_per_slot > 0) {
    config.compositional.sampler.samples_per_slot = flags.samples_per_slot;
    config.length.sampler.samples_per_slot = flags.samples_per_slot;
  }
  if (flags.jobs >= 0) config.jobs = flags.jobs;
  if (flags.kshot_k >= 0) config.compositional.splits.kshot_k = flags.kshot_k;
  if (!flags.splits.empty()) {
    std::vector<std::string> compositional;
    for (const std::string& name : flags.splits)
      if (name != split_names::kLength) compositional.push_back(name);
    config.compositional.splits.enabled = compositional;
  }
  config.validate();
  return config;
}

bool length_suite_enabled(const GenerateFlags& flags) {
  if (flags.splits.empty()) return true;
  for (const std::string& name : flags.splits)
    if (name == split_names::kLength) return true;
  return false;
}

int cmd_generate(const GenerateFlags& flags) {
  RunConfig config = resolve_config(flags);
  fs::create_directories(config.out_dir);

  json resolved = run_config_to_json(config);
  json manifest{{"master_seed", config.master_seed},
                {"config", resolved},
                {"config_hash", sha256_hex(resolved.dump())},
                {"files", json::object()}};

  auto emit = [&](const SuiteConfig& suite) {
    std::cerr << "generating " << suite.name << " suite (grid " << suite.grid_size << ")...\n";
    Dataset ds = make_dataset(suite, config.master_seed,
                              generate_suite(suite, config.master_seed, config.jobs));
    fs::path path = fs::path(config.out_dir) / (suite.name + ".json");
    write_dataset(ds, path.string());
    json counts = json::object();
    for (const auto& [name, xs] : ds.splits) counts[name] = xs.size();
    manifest["files"][suite.name + ".json"] =
        json{{"sha256", sha256_file_hex(path.string())},
             {"examples", ds.total_examples()},
             {"splits", counts}};
    std::cerr << "  wrote " << path.string() << " (" << ds.total_examples() << " examples)\n";
  };

  emit(config.compositional);
  if (length_suite_enabled(flags)) emit(config.length);

  fs::path manifest_path = fs::path(config.out_dir) / "manifest.json";
  std::ofstream out(manifest_path);
  out << manifest.dump(2) << "\n";
  if (!out) throw DatasetError("cannot write " + manifest_path.string());
  std::cerr << "  wrote " << manifest_path.string() << "\n";
  return kExitOk;
}

int cmd_verify(const std::string& dataset_path) {
  Dataset ds = read_dataset(dataset_path);
  std::vector<Violation> violations = verify_dataset(ds);
  if (violations.empty()) {
    std::cout << "ok: " << ds.total_examples() << " examples, 0 violations\n";
    return kExitOk;
  }
  for (const Violation& v : violations)
    std::cout << "violation id=" << v.id << " [" << v.check << "] " << v.detail << "\n";
  std::cout << violations.size() << " violation(s)\n";
  return kExitValidation;
}

int cmd_stats(const std::string& dataset_path, const std::string& report_json) {
  Dataset ds = read_dataset(dataset_path);
  StatsReport report = dataset_stats(ds);
  std::cout << render_stats(report);
  if (!report_json.empty()) {
    std::ofstream out(report_json);
    out << stats_to_json(report).dump(2) << "\n";
    if (!out) throw DatasetError("cannot write " + report_json);
  }
  return kExitOk;
}

int cmd_score(const std::string& dataset_path, const std::string& predictions_path,
              const std::string& report_json) {
  Dataset ds = read_dataset(dataset_path);
  std::vector<Prediction> predictions = load_predictions(predictions_path);
  ScoreReport report = score(ds, predictions);
  std::cout << render_score(report);
  if (!report_json.empty()) {
    std::ofstream out(report_json);
    out << score_to_json(report).dump(2) << "\n";
    if (!out) throw DatasetError("cannot write " + report_json);
  }
  return kExitOk;
}

char shape_glyph(Shape s) {
  switch (s) {
    case Shape::circle: return 'o';
    case Shape::square: return '#';
    case Shape::cylinder: return 'H';
  }
  return '?';
}

char heading_glyph(Heading h) {
  switch (h) {
    case Heading::north: return '^';
    case Heading::east: return '>';
    case Heading::south: return 'v';
    case Heading::west: return '<';
  }
  return '?';
}

std::string render_grid(const WorldState& w) {
  std::ostringstream out;
  for (int r = 0; r < w.grid_size; ++r) {
    for (int c = 0; c < w.grid_size; ++c) {
      Cell cell{r, c};
      std::string glyph = "....";
      if (const ObjectSpec* o = w.object_at(cell)) {
        glyph = std::string(1, to_string(o->color)[0]) + shape_glyph(o->shape) +
                std::to_string(o->size) + (w.target_cell == cell ? "*" : ".");
      }
      if (w.agent.cell() == cell) glyph[3] = heading_glyph(w.agent.heading);
      out << glyph << ' ';
    }
    out << "\n";
  }
  return out.str();
}

int cmd_replay(const std::string& dataset_path, uint64_t id) {
  Dataset ds = read_dataset(dataset_path);
  const Example* e = ds.find(id);
  if (!e) {
    std::cerr << "error: no example with id " << id << " in " << dataset_path << "\n";
    return kExitValidation;
  }
  std::cout << "command: " << join_tokens(e->command) << "\n";
  std::cout << "split: " << e->meta.split << ", referred target: " << e->meta.referred_target
            << ", direction: " << to_string(e->meta.direction)
            << ", distance: " << e->meta.distance << "\n\n";
  std::cout << render_grid(e->world) << "\n";

  const ActionSequence& gold = e->golds.front();
  ExecutionResult run = execute(e->world, gold);
  for (size_t i = 0; i < run.steps.size(); ++i) {
    const TrajectoryStep& step = run.steps[i];
    std::cout << i + 1 << ". " << to_string(gold[i]) << " -> agent (" << step.pose.row << ","
              << step.pose.col << ") facing " << to_string(step.pose.heading) << "\n";
  }
  if (!run.ok) {
    std::cout << "execution error at token " << run.error_index << ": " << run.error << "\n";
    return kExitValidation;
  }
  bool goal = goal_satisfied(e->frame, e->world, run.final_state);
  bool manner = manner_satisfied(e->frame.adverb, gold, e->world.agent.heading);
  std::cout << "\n" << render_grid(run.final_state);
  std::cout << "\ngoal: " << (goal ? "satisfied" : "violated")
            << ", manner: " << (manner ? "satisfied" : "violated") << "\n";
  return goal && manner ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gridforge: grounded instruction-following benchmark generator and scorer"};
  app.require_subcommand(1);

  GenerateFlags gen;
  CLI::App* generate = app.add_subcommand("generate", "Generate the benchmark dataset files");
  generate->add_option("--config", gen.config_path, "JSON config file");
  generate->add_option("--seed", gen.seed, "master seed (overrides config and GRIDFORGE_SEED)")
      ->each([&](const std::string&) { gen.has_seed = true; });
  generate->add_option("--out", gen.out_dir, "output directory");
  generate->add_option("--grid-size", gen.grid_size, "compositional suite grid size");
  generate->add_option("--samples-per-slot", gen.samples_per_slot,
                       "worlds per agent/target geometry");
  generate->add_option("--jobs", gen.jobs, "worker threads (0 = all cores)");
  generate->add_option("--k", gen.kshot_k, "few-shot demonstrations carved into train");
  generate->add_option("--splits", gen.splits, "restrict emitted test splits")->delimiter(',');

  std::string dataset_path, predictions_path, report_json;
  uint64_t replay_id = 0;

  CLI::App* verify = app.add_subcommand("verify", "Re-check every stored guarantee");
  verify->add_option("dataset", dataset_path, "dataset JSON file")->required();

  CLI::App* stats = app.add_subcommand("stats", "Dataset statistics tables");
  stats->add_option("dataset", dataset_path, "dataset JSON file")->required();
  stats->add_option("--report-json", report_json, "also write the report as JSON");

  CLI::App* score_cmd = app.add_subcommand("score", "Score a predictions file");
  score_cmd->add_option("dataset", dataset_path, "dataset JSON file")->required();
  score_cmd->add_option("predictions", predictions_path, "JSON-lines predictions")->required();
  score_cmd->add_option("--report-json", report_json, "also write the report as JSON");

  CLI::App* replay = app.add_subcommand("replay", "Print a gold trajectory step by step");
  replay->add_option("dataset", dataset_path, "dataset JSON file")->required();
  replay->add_option("id", replay_id, "example id")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (generate->parsed()) return cmd_generate(gen);
    if (verify->parsed()) return cmd_verify(dataset_path);
    if (stats->parsed()) return cmd_stats(dataset_path, report_json);
    if (score_cmd->parsed()) return cmd_score(dataset_path, predictions_path, report_json);
    if (replay->parsed()) return cmd_replay(dataset_path, replay_id);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitUsage;
}
