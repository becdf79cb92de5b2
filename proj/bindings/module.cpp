#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "gridforge/dataset_io.hpp"
#include "gridforge/eval.hpp"
#include "gridforge/planner.hpp"
#include "gridforge/sampler.hpp"

namespace py = pybind11;
using nlohmann::json;
using namespace gridforge;

namespace {

json to_json(const py::handle& obj) {
  if (obj.is_none()) return nullptr;
  if (py::isinstance<py::bool_>(obj)) return obj.cast<bool>();
  if (py::isinstance<py::int_>(obj)) return obj.cast<int64_t>();
  if (py::isinstance<py::float_>(obj)) return obj.cast<double>();
  if (py::isinstance<py::str>(obj)) return obj.cast<std::string>();
  if (py::isinstance<py::dict>(obj)) {
    json out = json::object();
    for (auto item : obj.cast<py::dict>())
      out[item.first.cast<std::string>()] = to_json(item.second);
    return out;
  }
  if (py::isinstance<py::list>(obj) || py::isinstance<py::tuple>(obj)) {
    json out = json::array();
    for (auto item : obj.cast<py::sequence>()) out.push_back(to_json(item));
    return out;
  }
  throw py::type_error("unsupported value type for conversion");
}

py::object to_python(const json& j) {
  switch (j.type()) {
    case json::value_t::null: return py::none();
    case json::value_t::boolean: return py::bool_(j.get<bool>());
    case json::value_t::number_integer: return py::int_(j.get<int64_t>());
    case json::value_t::number_unsigned: return py::int_(j.get<uint64_t>());
    case json::value_t::number_float: return py::float_(j.get<double>());
    case json::value_t::string: return py::str(j.get<std::string>());
    case json::value_t::array: {
      py::list out;
      for (const json& item : j) out.append(to_python(item));
      return out;
    }
    case json::value_t::object: {
      py::dict out;
      for (auto& [key, value] : j.items()) out[py::str(key)] = to_python(value);
      return out;
    }
    default: return py::none();
  }
}

WorldState world_from_py(const py::dict& world) { return world_from_json(to_json(world)); }
SemanticFrame frame_from_py(const py::dict& frame) { return frame_from_json(to_json(frame)); }

py::list py_enumerate_commands(const py::object& grammar) {
  GrammarConfig config;
  if (!grammar.is_none()) config = grammar_config_from_json(to_json(grammar));
  py::list out;
  for (const CommandTokens& c : enumerate_commands(config)) out.append(py::cast(c));
  return out;
}

py::dict py_parse(const std::vector<std::string>& tokens) {
  return to_python(frame_to_json(parse(tokens))).cast<py::dict>();
}

std::vector<std::string> py_realize(const py::dict& frame, const std::string& order,
                                    const std::string& determiner) {
  return realize(frame_from_py(frame), adjective_order_from_string(order), determiner);
}

py::array_t<uint8_t> py_encode_state(const py::dict& world) {
  WorldState w = world_from_py(world);
  StateTensor t = encode_state(w);
  py::array_t<uint8_t> out({t.grid_size, t.grid_size, StateTensor::kChannels});
  std::copy(t.values.begin(), t.values.end(), out.mutable_data());
  return out;
}

py::dict py_decode_state(const py::array_t<uint8_t, py::array::c_style>& tensor,
                         const py::object& target) {
  auto buf = tensor.unchecked<3>();
  if (buf.shape(0) != buf.shape(1) || buf.shape(2) != StateTensor::kChannels)
    throw py::value_error("state tensor must have shape (d, d, 16)");
  StateTensor t;
  t.grid_size = static_cast<int>(buf.shape(0));
  t.values.assign(tensor.data(), tensor.data() + tensor.size());
  std::optional<Cell> cell;
  if (!target.is_none()) {
    auto pair = target.cast<std::pair<int, int>>();
    cell = Cell{pair.first, pair.second};
  }
  return to_python(world_to_json(decode_state(t, cell))).cast<py::dict>();
}

py::dict py_execute(const py::dict& world, const std::vector<std::string>& actions) {
  WorldState w = world_from_py(world);
  ExecutionResult run = execute(w, actions_from_strings(actions));
  py::dict out;
  out["ok"] = run.ok;
  out["final_world"] = to_python(world_to_json(run.final_state));
  py::list poses;
  for (const TrajectoryStep& step : run.steps) {
    py::dict pose;
    pose["row"] = step.pose.row;
    pose["col"] = step.pose.col;
    pose["heading"] = std::string(to_string(step.pose.heading));
    poses.append(pose);
  }
  out["trajectory"] = poses;
  if (!run.ok) {
    out["error"] = run.error;
    out["error_index"] = run.error_index;
  }
  return out;
}

std::vector<std::string> py_plan(const py::dict& frame, const py::dict& world,
                                 const std::string& convention) {
  Convention c = convention == "vertical_first" ? Convention::vertical_first
                                                : Convention::horizontal_first;
  return actions_to_strings(plan(frame_from_py(frame), world_from_py(world), c));
}

py::list py_gold_set(const py::dict& frame, const py::dict& world) {
  py::list out;
  for (const ActionSequence& g : gold_set(frame_from_py(frame), world_from_py(world)))
    out.append(py::cast(actions_to_strings(g)));
  return out;
}

bool py_goal_satisfied(const py::dict& frame, const py::dict& initial, const py::dict& final) {
  return goal_satisfied(frame_from_py(frame), world_from_py(initial), world_from_py(final));
}

bool py_manner_satisfied(const std::string& adverb, const std::vector<std::string>& actions,
                         const std::string& initial_heading) {
  return manner_satisfied(adverb_from_string(adverb), actions_from_strings(actions),
                          heading_from_string(initial_heading));
}

bool py_exact_match(const std::vector<std::string>& prediction, const py::list& golds) {
  std::vector<ActionSequence> gold_seqs;
  for (auto g : golds)
    gold_seqs.push_back(actions_from_strings(g.cast<std::vector<std::string>>()));
  return exact_match(actions_from_strings(prediction), gold_seqs);
}

bool py_semantic_match(const std::vector<std::string>& prediction, const py::dict& frame,
                       const py::dict& world) {
  return semantic_match(actions_from_strings(prediction), frame_from_py(frame),
                        world_from_py(world));
}

double py_chance_level(const py::dict& world) { return chance_level(world_from_py(world)); }

py::dict py_sample_world(const py::dict& frame, const std::string& direction, int distance,
                         int grid_size, uint64_t seed) {
  SemanticFrame f = frame_from_py(frame);
  Rng rng(seed);
  GenerationRecipe recipe = build_recipe(f, rng);
  SituationSlot slot{direction_from_string(direction), distance};
  SamplerConfig config;
  auto world = sample_world(f, slot, recipe, rng, grid_size, config);
  if (!world) throw py::value_error("slot is infeasible for this grid size");
  return to_python(world_to_json(*world)).cast<py::dict>();
}

bool py_validate_world(const py::dict& frame, const py::dict& world) {
  return validate_world(frame_from_py(frame), world_from_py(world));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Grid-world instruction benchmark: grammar, simulator, oracle planner, scoring.";

  m.def("enumerate_commands", &py_enumerate_commands, py::arg("grammar") = py::none(),
        "All commands of the configured language, lexicographically sorted.");
  m.def("parse", &py_parse, py::arg("tokens"),
        "Parse command tokens into a semantic frame dict.");
  m.def("realize", &py_realize, py::arg("frame"), py::arg("order") = "size_first",
        py::arg("determiner") = "the", "Render a frame back into command tokens.");
  m.def("encode_state", &py_encode_state, py::arg("world"),
        "One-hot (d, d, 16) uint8 tensor for a world dict.");
  m.def("decode_state", &py_decode_state, py::arg("tensor"), py::arg("target") = py::none(),
        "Recover a world dict from a state tensor; target is an optional (row, col).");
  m.def("execute", &py_execute, py::arg("world"), py::arg("actions"),
        "Run an action sequence; returns ok, final_world, trajectory, and error info.");
  m.def("plan", &py_plan, py::arg("frame"), py::arg("world"),
        py::arg("convention") = "horizontal_first",
        "Gold action sequence under a leg-order convention.");
  m.def("gold_set", &py_gold_set, py::arg("frame"), py::arg("world"),
        "All acceptable gold sequences (both conventions, deduplicated).");
  m.def("goal_satisfied", &py_goal_satisfied, py::arg("frame"), py::arg("initial"),
        py::arg("final"));
  m.def("manner_satisfied", &py_manner_satisfied, py::arg("adverb"), py::arg("actions"),
        py::arg("initial_heading") = "east");
  m.def("exact_match", &py_exact_match, py::arg("prediction"), py::arg("golds"));
  m.def("semantic_match", &py_semantic_match, py::arg("prediction"), py::arg("frame"),
        py::arg("world"));
  m.def("chance_level", &py_chance_level, py::arg("world"));
  m.def("sample_world", &py_sample_world, py::arg("frame"), py::arg("direction"),
        py::arg("distance"), py::arg("grid_size") = 6, py::arg("seed") = 0,
        "Sample a world realizing the given agent-to-target geometry.");
  m.def("validate_world", &py_validate_world, py::arg("frame"), py::arg("world"));

  py::register_exception<ParseError>(m, "CommandParseError");
  py::register_exception<PlanningError>(m, "PlanError");

  m.attr("ACTIONS") = py::make_tuple("walk", "push", "pull", "stay", "L_turn", "R_turn");
#ifdef GRIDFORGE_VERSION
  m.attr("__version__") = GRIDFORGE_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
