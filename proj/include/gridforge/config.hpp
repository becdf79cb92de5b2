#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "gridforge/grammar.hpp"
#include "gridforge/sampler.hpp"
#include "gridforge/splits.hpp"

namespace gridforge {

// One generated dataset: command language, world sampling, and split carving
// at a fixed grid size.
struct SuiteConfig {
  std::string name;  // "compositional" or "length"
  int grid_size = 6;
  GrammarConfig grammar;
  SamplerConfig sampler;
  SplitConfig splits;

  bool is_length_suite() const { return name == "length"; }
  void validate() const;
};

struct RunConfig {
  uint64_t master_seed = 20240601;
  int jobs = 0;  // 0 = all hardware threads
  std::string out_dir = "out";
  SuiteConfig compositional;
  SuiteConfig length;

  static RunConfig defaults();
  void validate() const;
};

// Strict parsers: unknown keys are rejected. Partial documents override the
// defaults they sit on top of.
RunConfig run_config_from_json(const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);
nlohmann::json run_config_to_json(const RunConfig& config);

nlohmann::json grammar_config_to_json(const GrammarConfig& config);
GrammarConfig grammar_config_from_json(const nlohmann::json& j, GrammarConfig base = {});

// Hex SHA-256 of the canonical grammar config document.
std::string grammar_config_hash(const GrammarConfig& config);

}  // namespace gridforge
