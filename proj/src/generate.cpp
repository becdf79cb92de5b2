#include "gridforge/generate.hpp"

#include <atomic>
#include <mutex>
#include <thread>

#include "gridforge/planner.hpp"
#include "gridforge/rng.hpp"
#include "gridforge/sampler.hpp"

namespace gridforge {

namespace {

std::vector<Example> generate_for_command(const CommandTokens& command, size_t command_index,
                                          const SuiteConfig& suite, uint64_t master_seed) {
  SemanticFrame frame = parse(command);
  Rng rng(derive_seed(master_seed, "command:" + suite.name, command_index));

  std::vector<Example> out;
  const auto targets = enumerate_target_specs(frame);
  const auto slots = enumerate_slots(suite.grid_size);
  for (const ObjectSpec& target : targets)
    for (const SituationSlot& slot : slots)
      for (int sample = 0; sample < suite.sampler.samples_per_slot; ++sample) {
        GenerationRecipe recipe = build_recipe(frame, target, rng);
        auto world = sample_world(frame, slot, recipe, rng, suite.grid_size, suite.sampler);
        if (!world) continue;  // geometry cannot hold the recipe

        Example e;
        e.command = command;
        e.frame = frame;
        e.world = std::move(*world);
        e.golds = gold_set(frame, e.world);
        e.meta.referred_target =
            referred_target(frame, observed_order(command).value_or(AdjectiveOrder::size_first));
        e.meta.target_spec = target;
        e.meta.target_cell = *e.world.target_cell;
        e.meta.direction = slot.direction;
        e.meta.distance = slot.distance;
        e.meta.gold_length = static_cast<int>(e.golds.front().size());
        out.push_back(std::move(e));
      }
  return out;
}

}  // namespace

std::vector<Example> generate_pool(const SuiteConfig& suite, uint64_t master_seed, int jobs) {
  suite.validate();
  const std::vector<CommandTokens> commands = enumerate_commands(suite.grammar);

  if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
  if (jobs < 1) jobs = 1;
  jobs = std::min<int>(jobs, static_cast<int>(commands.size()));
  if (jobs < 1) jobs = 1;

  std::vector<std::vector<Example>> per_command(commands.size());
  std::atomic<size_t> next{0};
  std::atomic<bool> failed{false};
  std::string failure;
  std::mutex failure_mutex;

  auto worker = [&]() {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= commands.size() || failed.load()) break;
      try {
        per_command[i] = generate_for_command(commands[i], i, suite, master_seed);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        failed.store(true);
        if (failure.empty())
          failure = "generation failed for '" + join_tokens(commands[i]) + "': " + e.what();
      }
    }
  };

  std::vector<std::thread> threads;
  threads.reserve(jobs);
  for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (failed.load()) throw DatasetError(failure);

  std::vector<Example> pool;
  size_t total = 0;
  for (const auto& chunk : per_command) total += chunk.size();
  pool.reserve(total);
  uint64_t id = 0;
  for (auto& chunk : per_command)
    for (Example& e : chunk) {
      e.id = id++;
      pool.push_back(std::move(e));
    }
  return pool;
}

SplitMap generate_suite(const SuiteConfig& suite, uint64_t master_seed, int jobs) {
  std::vector<Example> pool = generate_pool(suite, master_seed, jobs);
  return suite.is_length_suite() ? assign_length(std::move(pool), suite.splits, master_seed)
                                 : assign_compositional(std::move(pool), suite.splits, master_seed);
}

}  // namespace gridforge
