#include "gridforge/dataset_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "gridforge/hash.hpp"
#include "gridforge/sampler.hpp"

namespace gridforge {

using nlohmann::json;

size_t Dataset::total_examples() const {
  size_t n = 0;
  for (const auto& [name, xs] : splits) n += xs.size();
  return n;
}

const Example* Dataset::find(uint64_t id) const {
  for (const auto& [name, xs] : splits) {
    auto it = std::lower_bound(xs.begin(), xs.end(), id,
                               [](const Example& e, uint64_t v) { return e.id < v; });
    if (it != xs.end() && it->id == id) return &*it;
  }
  return nullptr;
}

Dataset make_dataset(const SuiteConfig& suite, uint64_t master_seed, SplitMap splits) {
  Dataset ds;
  ds.header.suite = suite.name;
  ds.header.grid_size = suite.grid_size;
  ds.header.grammar_config_hash = grammar_config_hash(suite.grammar);
  ds.header.master_seed = master_seed;
  if (suite.is_length_suite())
    ds.header.length_threshold = suite.splits.length_threshold;
  else
    ds.header.kshot_k = suite.splits.kshot_k;
  ds.splits = std::move(splits);
  return ds;
}

json frame_to_json(const SemanticFrame& f) {
  return json{{"verb", std::string(to_string(f.verb))},
              {"adverb", std::string(to_string(f.adverb))},
              {"size", std::string(to_string(f.size))},
              {"color", f.color ? std::string(to_string(*f.color)) : "none"},
              {"shape", std::string(to_string(f.shape))}};
}

SemanticFrame frame_from_json(const json& j) {
  SemanticFrame f;
  f.verb = verb_from_string(j.at("verb").get<std::string>());
  f.adverb = adverb_from_string(j.at("adverb").get<std::string>());
  f.size = size_word_from_string(j.at("size").get<std::string>());
  std::string color = j.at("color").get<std::string>();
  if (color != "none") f.color = color_from_string(color);
  f.shape = shape_from_string(j.at("shape").get<std::string>());
  return f;
}

json world_to_json(const WorldState& w) {
  json objects = json::array();
  for (const PlacedObject& o : w.objects)
    objects.push_back(json{{"row", o.cell.row},
                           {"col", o.cell.col},
                           {"shape", std::string(to_string(o.spec.shape))},
                           {"color", std::string(to_string(o.spec.color))},
                           {"size", o.spec.size}});
  json out{{"grid_size", w.grid_size},
           {"agent",
            json{{"row", w.agent.row},
                 {"col", w.agent.col},
                 {"heading", std::string(to_string(w.agent.heading))}}},
           {"objects", objects}};
  if (w.target_cell)
    out["target"] = json{{"row", w.target_cell->row}, {"col", w.target_cell->col}};
  return out;
}

WorldState world_from_json(const json& j) {
  WorldState w;
  w.grid_size = j.at("grid_size").get<int>();
  const json& agent = j.at("agent");
  w.agent = {agent.at("row").get<int>(), agent.at("col").get<int>(),
             heading_from_string(agent.at("heading").get<std::string>())};
  for (const json& o : j.at("objects")) {
    ObjectSpec spec{shape_from_string(o.at("shape").get<std::string>()),
                    color_from_string(o.at("color").get<std::string>()),
                    o.at("size").get<int>()};
    if (spec.size < kMinObjectSize || spec.size > kMaxObjectSize)
      throw DatasetError("world: object size out of range");
    w.add_object({o.at("row").get<int>(), o.at("col").get<int>()}, spec);
  }
  if (!w.in_bounds(w.agent.cell())) throw DatasetError("world: agent out of bounds");
  if (j.contains("target"))
    w.target_cell = Cell{j.at("target").at("row").get<int>(), j.at("target").at("col").get<int>()};
  return w;
}

json example_to_json(const Example& e) {
  json golds = json::array();
  for (const ActionSequence& g : e.golds) {
    json seq = json::array();
    for (Action a : g) seq.push_back(std::string(to_string(a)));
    golds.push_back(std::move(seq));
  }
  json meta{{"referred_target", e.meta.referred_target},
            {"target",
             json{{"row", e.meta.target_cell.row},
                  {"col", e.meta.target_cell.col},
                  {"shape", std::string(to_string(e.meta.target_spec.shape))},
                  {"color", std::string(to_string(e.meta.target_spec.color))},
                  {"size", e.meta.target_spec.size}}},
            {"direction", std::string(to_string(e.meta.direction))},
            {"distance", e.meta.distance},
            {"gold_length", e.meta.gold_length},
            {"split", e.meta.split}};
  if (e.meta.kshot_carved) meta["kshot_carved"] = true;
  return json{{"id", e.id},
              {"command", e.command},
              {"frame", frame_to_json(e.frame)},
              {"world", world_to_json(e.world)},
              {"golds", std::move(golds)},
              {"meta", std::move(meta)}};
}

Example example_from_json(const json& j) {
  Example e;
  e.id = j.at("id").get<uint64_t>();
  e.command = j.at("command").get<std::vector<std::string>>();
  e.frame = frame_from_json(j.at("frame"));
  e.world = world_from_json(j.at("world"));
  for (const json& g : j.at("golds"))
    e.golds.push_back(actions_from_strings(g.get<std::vector<std::string>>()));
  const json& meta = j.at("meta");
  e.meta.referred_target = meta.at("referred_target").get<std::string>();
  const json& target = meta.at("target");
  e.meta.target_cell = {target.at("row").get<int>(), target.at("col").get<int>()};
  e.meta.target_spec = {shape_from_string(target.at("shape").get<std::string>()),
                        color_from_string(target.at("color").get<std::string>()),
                        target.at("size").get<int>()};
  e.meta.direction = direction_from_string(meta.at("direction").get<std::string>());
  e.meta.distance = meta.at("distance").get<int>();
  e.meta.gold_length = meta.at("gold_length").get<int>();
  e.meta.split = meta.at("split").get<std::string>();
  e.meta.kshot_carved = meta.value("kshot_carved", false);
  return e;
}

std::string example_content_hash(const Example& e) {
  return sha256_hex(join_tokens(e.command) + "\x1f" + world_to_json(e.world).dump());
}

namespace {

json header_to_json(const DatasetHeader& h) {
  json out{{"format_version", h.format_version},
           {"suite", h.suite},
           {"grid_size", h.grid_size},
           {"grammar_config_hash", h.grammar_config_hash},
           {"master_seed", h.master_seed}};
  if (h.suite == "length")
    out["length_threshold"] = h.length_threshold;
  else
    out["kshot_k"] = h.kshot_k;
  return out;
}

DatasetHeader header_from_json(const json& j) {
  DatasetHeader h;
  h.format_version = j.at("format_version").get<int>();
  if (h.format_version != 1)
    throw DatasetError("unsupported dataset format version " +
                       std::to_string(h.format_version));
  h.suite = j.at("suite").get<std::string>();
  h.grid_size = j.at("grid_size").get<int>();
  h.grammar_config_hash = j.at("grammar_config_hash").get<std::string>();
  h.master_seed = j.at("master_seed").get<uint64_t>();
  h.kshot_k = j.value("kshot_k", 0);
  h.length_threshold = j.value("length_threshold", 0);
  return h;
}

}  // namespace

void write_dataset(const Dataset& dataset, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DatasetError("cannot open for writing: " + path);

  // Examples are emitted one per line so multi-hundred-thousand example
  // files never need a whole-document DOM on either side.
  out << "{\n\"header\": " << header_to_json(dataset.header).dump() << ",\n\"splits\": {";
  bool first_split = true;
  for (const auto& [name, xs] : dataset.splits) {
    out << (first_split ? "\n" : ",\n") << json(name).dump() << ": [";
    first_split = false;
    for (size_t i = 0; i < xs.size(); ++i)
      out << (i ? ",\n" : "\n") << example_to_json(xs[i]).dump();
    out << (xs.empty() ? "]" : "\n]");
  }
  out << "\n}\n}\n";
  if (!out) throw DatasetError("write failed: " + path);
}

Dataset read_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DatasetError("cannot open dataset: " + path);

  Dataset ds;
  // Streaming parse: example objects are captured as they complete and
  // pruned from the DOM, keeping memory proportional to one example.
  struct State {
    std::vector<std::string> keys;  // object key path, "[]" marks array frames
    std::string current_split;
  } state;

  auto callback = [&](int /*depth*/, json::parse_event_t event, json& parsed) -> bool {
    switch (event) {
      case json::parse_event_t::object_start:
        state.keys.emplace_back();
        return true;
      case json::parse_event_t::key: {
        state.keys.back() = parsed.get<std::string>();
        if (state.keys.size() == 2 && state.keys[0] == "splits")
          state.current_split = state.keys.back();
        return true;
      }
      case json::parse_event_t::object_end: {
        state.keys.pop_back();
        // Path at completion: {splits -> <name> -> [] -> <example object>}
        if (state.keys.size() == 3 && state.keys[0] == "splits" && state.keys[2] == "[]") {
          try {
            ds.splits[state.current_split].push_back(example_from_json(parsed));
          } catch (const json::exception& e) {
            throw DatasetError("malformed example record in split '" + state.current_split +
                               "': " + e.what());
          }
          return false;  // prune from the DOM
        }
        return true;
      }
      case json::parse_event_t::array_start:
        state.keys.emplace_back("[]");
        return true;
      case json::parse_event_t::array_end:
        // Example arrays stay in the DOM (emptied by pruning) so splits with
        // no examples survive the round trip.
        state.keys.pop_back();
        return true;
      case json::parse_event_t::value:
        return true;
    }
    return true;
  };

  json doc;
  try {
    doc = json::parse(in, callback);
  } catch (const json::parse_error& e) {
    throw DatasetError(std::string("dataset parse error: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("header"))
    throw DatasetError("dataset: missing header");
  try {
    ds.header = header_from_json(doc.at("header"));
  } catch (const json::exception& e) {
    throw DatasetError(std::string("dataset header: ") + e.what());
  }
  // Splits dropped entirely by pruning still need their (empty) entries.
  if (doc.contains("splits"))
    for (auto& [name, value] : doc.at("splits").items()) ds.splits[name];
  for (auto& [name, xs] : ds.splits)
    std::sort(xs.begin(), xs.end(),
              [](const Example& a, const Example& b) { return a.id < b.id; });
  return ds;
}

namespace {

// Running stats over one example stream. Hashes stand in for the full
// command/world/gold strings to keep the sets small.
struct StatsAccumulator {
  size_t examples = 0;
  std::unordered_set<std::string> unique_keys;
  std::unordered_map<std::string, std::unordered_set<std::string>> worlds_by_command;
  std::map<std::string, ReferredTargetStats> targets;

  void add(const Example& e) {
    ++examples;
    std::string command = join_tokens(e.command);
    std::ostringstream key;
    key << command << '\x1f' << e.meta.target_cell.row << ',' << e.meta.target_cell.col;
    for (const ActionSequence& g : e.golds) {
      key << '\x1f';
      for (Action a : g) key << static_cast<int>(a) << ',';
    }
    unique_keys.insert(sha256_hex(key.str()));
    worlds_by_command[command].insert(sha256_hex(world_to_json(e.world).dump()));

    auto& t = targets[std::string(to_string(e.meta.target_spec.color)) + " " +
                      std::string(to_string(e.meta.target_spec.shape))];
    ++t.placed;
    if (e.frame.color && *e.frame.color == e.meta.target_spec.color) ++t.referred;
  }

  SplitStats finish() const {
    SplitStats stats;
    stats.examples = examples;
    stats.unique_examples = unique_keys.size();
    stats.commands = worlds_by_command.size();
    double total_worlds = 0;
    for (const auto& [cmd, worlds] : worlds_by_command) total_worlds += worlds.size();
    stats.mean_worlds_per_command =
        worlds_by_command.empty() ? 0.0 : total_worlds / worlds_by_command.size();
    stats.targets = targets;
    for (Color c : kAllColors)  // zero rows keep held-out gaps visible
      for (Shape s : kAllShapes)
        stats.targets[std::string(to_string(c)) + " " + std::string(to_string(s))];
    return stats;
  }
};

}  // namespace

StatsReport dataset_stats(const Dataset& dataset) {
  StatsReport report;

  StatsAccumulator overall;
  for (const auto& [name, xs] : dataset.splits) {
    StatsAccumulator acc;
    for (const Example& e : xs) {
      acc.add(e);
      overall.add(e);
    }
    report.splits[name] = acc.finish();
  }
  report.overall = overall.finish();
  return report;
}

json stats_to_json(const StatsReport& report) {
  auto split_json = [](const SplitStats& s) {
    json targets = json::object();
    for (const auto& [name, t] : s.targets)
      targets[name] = json{{"placed", t.placed}, {"referred", t.referred}};
    return json{{"examples", s.examples},
                {"unique_examples", s.unique_examples},
                {"commands", s.commands},
                {"mean_worlds_per_command", s.mean_worlds_per_command},
                {"targets", targets}};
  };
  json splits = json::object();
  for (const auto& [name, s] : report.splits) splits[name] = split_json(s);
  return json{{"splits", splits}, {"overall", split_json(report.overall)}};
}

std::string render_stats(const StatsReport& report) {
  std::ostringstream out;
  out << "split                       examples    unique  commands  worlds/command\n";
  auto row = [&](const std::string& name, const SplitStats& s) {
    out << name;
    for (size_t i = name.size(); i < 26; ++i) out << ' ';
    char buf[96];
    std::snprintf(buf, sizeof buf, "%10zu%10zu%10zu%16.1f\n", s.examples, s.unique_examples,
                  s.commands, s.mean_worlds_per_command);
    out << buf;
  };
  for (const auto& [name, s] : report.splits) row(name, s);
  row("(all)", report.overall);

  auto train = report.splits.find("train");
  if (train != report.splits.end()) {
    out << "\ntrain targets                placed  referred-with-color\n";
    for (const auto& [name, t] : train->second.targets) {
      out << name;
      for (size_t i = name.size(); i < 26; ++i) out << ' ';
      char buf[64];
      std::snprintf(buf, sizeof buf, "%9zu%12zu\n", t.placed, t.referred);
      out << buf;
    }
  }
  return out.str();
}

namespace {

void check_example(const Dataset& dataset, const Example& e, std::vector<Violation>& out) {
  auto violation = [&](const std::string& check, const std::string& detail) {
    out.push_back({e.id, check, detail});
  };

  SemanticFrame parsed;
  try {
    parsed = parse(e.command);
  } catch (const ParseError& err) {
    violation("command", err.what());
    return;
  }
  if (!(parsed == e.frame)) violation("frame", "stored frame differs from parsed command");

  if (e.world.grid_size != dataset.header.grid_size)
    violation("world", "grid size differs from the dataset header");
  if (!validate_world(e.frame, e.world))
    violation("world", "description does not resolve to the designated target");

  if (!e.world.target_cell || *e.world.target_cell != e.meta.target_cell)
    violation("meta", "target cell mismatch");
  const ObjectSpec* target = e.world.object_at(e.meta.target_cell);
  if (!target || !(*target == e.meta.target_spec)) violation("meta", "target spec mismatch");
  auto dir = direction_between(e.world.agent.cell(), e.meta.target_cell);
  int dist = std::abs(e.meta.target_cell.row - e.world.agent.row) +
             std::abs(e.meta.target_cell.col - e.world.agent.col);
  if (!dir || *dir != e.meta.direction || dist != e.meta.distance)
    violation("meta", "direction/distance mismatch");

  if (e.golds.empty()) {
    violation("golds", "no gold sequences");
    return;
  }
  if (e.meta.gold_length != static_cast<int>(e.golds.front().size()))
    violation("meta", "gold_length differs from the primary gold");
  for (size_t i = 0; i < e.golds.size(); ++i) {
    ExecutionResult run = execute(e.world, e.golds[i]);
    if (!run.ok) {
      violation("execute", "gold " + std::to_string(i) + ": " + run.error);
      continue;
    }
    if (!goal_satisfied(e.frame, e.world, run.final_state))
      violation("goal", "gold " + std::to_string(i) + " does not satisfy the verb goal");
    if (!manner_satisfied(e.frame.adverb, e.golds[i], e.world.agent.heading))
      violation("manner", "gold " + std::to_string(i) + " does not satisfy the adverb manner");
  }
}

}  // namespace

std::vector<Violation> verify_dataset(const Dataset& dataset) {
  std::vector<Violation> out;

  for (const auto& [name, xs] : dataset.splits)
    for (const Example& e : xs) {
      check_example(dataset, e, out);
      if (e.meta.split != name)
        out.push_back({e.id, "split", "metadata split label differs from the file section"});
    }

  bool length_suite = dataset.header.suite == "length";
  auto train = dataset.splits.find("train");

  if (train != dataset.splits.end()) {
    for (const Example& e : train->second) {
      if (length_suite) {
        if (e.meta.gold_length > dataset.header.length_threshold)
          out.push_back({e.id, "leakage", "train example exceeds the length threshold"});
        continue;
      }
      for (const std::string& name : compositional_split_names()) {
        if (!dataset.splits.count("test:" + name)) continue;
        if (!matches_split(name, e)) continue;
        if (name == split_names::kAdverbKshot && e.meta.kshot_carved) continue;
        out.push_back({e.id, "leakage", "train example matches held-out split " + name});
      }
    }
    size_t carved = 0;
    for (const Example& e : train->second) carved += e.meta.kshot_carved ? 1 : 0;
    if (!length_suite && dataset.splits.count("test:" + std::string(split_names::kAdverbKshot)) &&
        carved != static_cast<size_t>(dataset.header.kshot_k))
      out.push_back({0, "kshot",
                     "train carries " + std::to_string(carved) + " carved demonstrations, " +
                         std::to_string(dataset.header.kshot_k) + " expected"});
  }

  for (const auto& [name, xs] : dataset.splits) {
    if (name.rfind("test:", 0) != 0) continue;
    std::string predicate = name.substr(5);
    for (const Example& e : xs) {
      if (predicate == split_names::kLength) {
        if (e.meta.gold_length <= dataset.header.length_threshold)
          out.push_back({e.id, "predicate", "length test example within the train range"});
      } else if (predicate != split_names::kRandom && !matches_split(predicate, e)) {
        out.push_back({e.id, "predicate", "test example does not match split " + predicate});
      }
    }
  }

  // Disjointness between train and every test split, by id and content.
  if (train != dataset.splits.end()) {
    std::unordered_set<uint64_t> train_ids;
    std::unordered_set<std::string> train_hashes;
    for (const Example& e : train->second) {
      train_ids.insert(e.id);
      train_hashes.insert(example_content_hash(e));
    }
    std::unordered_map<std::string, size_t> train_commands;
    for (const Example& e : train->second) ++train_commands[join_tokens(e.command)];

    for (const auto& [name, xs] : dataset.splits) {
      if (name.rfind("test:", 0) != 0) continue;
      for (const Example& e : xs) {
        if (train_ids.count(e.id))
          out.push_back({e.id, "disjoint", "test example id also present in train"});
        if (train_hashes.count(example_content_hash(e)))
          out.push_back({e.id, "disjoint", "test example content also present in train"});
        if (name == "test:" + std::string(split_names::kRandom) &&
            !train_commands.count(join_tokens(e.command)))
          out.push_back({e.id, "coverage", "random-test command missing from train"});
      }
    }
  }

  // Ids must be unique across the whole file.
  std::unordered_set<uint64_t> seen;
  for (const auto& [name, xs] : dataset.splits)
    for (const Example& e : xs)
      if (!seen.insert(e.id).second)
        out.push_back({e.id, "id", "duplicate example id"});

  return out;
}

}  // namespace gridforge
