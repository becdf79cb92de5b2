#include "gridforge/config.hpp"

#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "gridforge/hash.hpp"

namespace gridforge {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& j, const std::set<std::string>& known,
                         const std::string& where) {
  if (!j.is_object()) throw ConfigError("config: " + where + " must be an object");
  for (auto& [key, value] : j.items())
    if (!known.count(key)) throw ConfigError("config: unknown key '" + key + "' in " + where);
}

template <typename T, typename FromString>
std::vector<T> name_list(const json& j, FromString from_string, const std::string& where) {
  if (!j.is_array()) throw ConfigError("config: " + where + " must be an array of strings");
  std::vector<T> out;
  for (const auto& item : j) out.push_back(from_string(item.template get<std::string>()));
  return out;
}

template <typename T>
json to_name_array(const std::vector<T>& values) {
  json arr = json::array();
  for (const T& v : values) arr.push_back(std::string(to_string(v)));
  return arr;
}

json sampler_config_to_json(const SamplerConfig& c) {
  return json{{"samples_per_slot", c.samples_per_slot},
              {"heading", c.heading_policy == HeadingPolicy::uniform
                              ? "uniform"
                              : std::string(to_string(c.fixed_heading))}};
}

SamplerConfig sampler_config_from_json(const json& j, SamplerConfig base) {
  reject_unknown_keys(j, {"samples_per_slot", "heading"}, "sampler");
  if (j.contains("samples_per_slot")) base.samples_per_slot = j["samples_per_slot"].get<int>();
  if (j.contains("heading")) {
    std::string h = j["heading"].get<std::string>();
    if (h == "uniform") {
      base.heading_policy = HeadingPolicy::uniform;
    } else {
      base.heading_policy = HeadingPolicy::fixed;
      base.fixed_heading = heading_from_string(h);
    }
  }
  base.validate();
  return base;
}

json split_config_to_json(const SplitConfig& c) {
  json names = json::array();
  for (const std::string& n : c.enabled) names.push_back(n);
  json priority = json::array();
  for (const std::string& n : c.priority) priority.push_back(n);
  return json{{"enabled", names},
              {"kshot_k", c.kshot_k},
              {"dev_size", c.dev_size},
              {"test_cap", c.test_cap},
              {"random_test_cap", c.random_test_cap},
              {"length_threshold", c.length_threshold},
              {"carve_seed", c.carve_seed},
              {"priority", priority}};
}

SplitConfig split_config_from_json(const json& j, SplitConfig base, bool length_suite) {
  reject_unknown_keys(j,
                      {"enabled", "kshot_k", "dev_size", "test_cap", "random_test_cap",
                       "length_threshold", "carve_seed", "priority"},
                      "splits");
  if (j.contains("enabled")) base.enabled = j["enabled"].get<std::vector<std::string>>();
  if (j.contains("kshot_k")) base.kshot_k = j["kshot_k"].get<int>();
  if (j.contains("dev_size")) base.dev_size = j["dev_size"].get<size_t>();
  if (j.contains("test_cap")) base.test_cap = j["test_cap"].get<size_t>();
  if (j.contains("random_test_cap")) base.random_test_cap = j["random_test_cap"].get<size_t>();
  if (j.contains("length_threshold")) base.length_threshold = j["length_threshold"].get<int>();
  if (j.contains("carve_seed")) base.carve_seed = j["carve_seed"].get<uint64_t>();
  if (j.contains("priority")) base.priority = j["priority"].get<std::vector<std::string>>();
  base.validate(length_suite);
  return base;
}

SuiteConfig suite_config_from_json(const json& j, SuiteConfig base) {
  reject_unknown_keys(j, {"grid_size", "grammar", "sampler", "splits"}, base.name);
  if (j.contains("grid_size")) base.grid_size = j["grid_size"].get<int>();
  if (j.contains("grammar")) base.grammar = grammar_config_from_json(j["grammar"], base.grammar);
  if (j.contains("sampler")) base.sampler = sampler_config_from_json(j["sampler"], base.sampler);
  if (j.contains("splits"))
    base.splits = split_config_from_json(j["splits"], base.splits, base.is_length_suite());
  base.validate();
  return base;
}

json suite_config_to_json(const SuiteConfig& c) {
  return json{{"grid_size", c.grid_size},
              {"grammar", grammar_config_to_json(c.grammar)},
              {"sampler", sampler_config_to_json(c.sampler)},
              {"splits", split_config_to_json(c.splits)}};
}

}  // namespace

void SuiteConfig::validate() const {
  if (grid_size < 3) throw ConfigError("config: grid_size must be >= 3");
  grammar.validate();
  sampler.validate();
  splits.validate(is_length_suite());
}

RunConfig RunConfig::defaults() {
  RunConfig config;
  config.compositional.name = "compositional";
  config.compositional.grid_size = 6;
  config.compositional.splits.enabled = compositional_split_names();
  config.compositional.splits.enabled.insert(config.compositional.splits.enabled.begin(),
                                             split_names::kRandom);

  // The length suite trains on short demonstrations of the full command set;
  // manner adverbs would stretch sequences far beyond the held-out range, so
  // its language is adverb-free with a single adjective order.
  config.length.name = "length";
  config.length.grid_size = 12;
  config.length.grammar.adverbs.clear();
  config.length.grammar.adjective_orders = {AdjectiveOrder::size_first};
  config.length.splits.enabled = {split_names::kLength};
  config.length.splits.length_threshold = 15;
  return config;
}

void RunConfig::validate() const {
  if (jobs < 0) throw ConfigError("config: jobs must be >= 0");
  if (out_dir.empty()) throw ConfigError("config: out_dir must not be empty");
  compositional.validate();
  length.validate();
}

json grammar_config_to_json(const GrammarConfig& c) {
  return json{{"verbs", to_name_array(c.verbs)},
              {"adverbs", to_name_array(c.adverbs)},
              {"colors", to_name_array(c.colors)},
              {"sizes", to_name_array(c.sizes)},
              {"shapes", to_name_array(c.shapes)},
              {"determiner", c.determiner},
              {"adjective_orders", to_name_array(c.adjective_orders)}};
}

GrammarConfig grammar_config_from_json(const json& j, GrammarConfig base) {
  reject_unknown_keys(
      j, {"verbs", "adverbs", "colors", "sizes", "shapes", "determiner", "adjective_orders"},
      "grammar");
  if (j.contains("verbs"))
    base.verbs = name_list<Verb>(j["verbs"], verb_from_string, "grammar.verbs");
  if (j.contains("adverbs"))
    base.adverbs = name_list<Adverb>(j["adverbs"], adverb_from_string, "grammar.adverbs");
  if (j.contains("colors"))
    base.colors = name_list<Color>(j["colors"], color_from_string, "grammar.colors");
  if (j.contains("sizes"))
    base.sizes = name_list<SizeWord>(j["sizes"], size_word_from_string, "grammar.sizes");
  if (j.contains("shapes"))
    base.shapes = name_list<Shape>(j["shapes"], shape_from_string, "grammar.shapes");
  if (j.contains("determiner")) base.determiner = j["determiner"].get<std::string>();
  if (j.contains("adjective_orders"))
    base.adjective_orders = name_list<AdjectiveOrder>(
        j["adjective_orders"], adjective_order_from_string, "grammar.adjective_orders");
  base.validate();
  return base;
}

std::string grammar_config_hash(const GrammarConfig& config) {
  return sha256_hex(grammar_config_to_json(config).dump());
}

RunConfig run_config_from_json(const json& j) {
  reject_unknown_keys(j, {"master_seed", "jobs", "out_dir", "compositional", "length"}, "config");
  RunConfig config = RunConfig::defaults();
  if (j.contains("master_seed")) config.master_seed = j["master_seed"].get<uint64_t>();
  if (j.contains("jobs")) config.jobs = j["jobs"].get<int>();
  if (j.contains("out_dir")) config.out_dir = j["out_dir"].get<std::string>();
  if (j.contains("compositional"))
    config.compositional = suite_config_from_json(j["compositional"], config.compositional);
  if (j.contains("length")) config.length = suite_config_from_json(j["length"], config.length);
  config.validate();
  return config;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config: " + path + ": " + e.what());
  }
  return run_config_from_json(j);
}

json run_config_to_json(const RunConfig& config) {
  return json{{"master_seed", config.master_seed},
              {"jobs", config.jobs},
              {"out_dir", config.out_dir},
              {"compositional", suite_config_to_json(config.compositional)},
              {"length", suite_config_to_json(config.length)}};
}

}  // namespace gridforge
