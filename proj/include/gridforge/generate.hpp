#pragma once

#include <cstdint>
#include <vector>

#include "gridforge/config.hpp"
#include "gridforge/splits.hpp"

namespace gridforge {

// Builds the full example pool for a suite: every enumerated command, paired
// with every compatible target object, every agent/target geometry, and
// samples_per_slot drawn worlds, each with executor-verified gold sequences.
// Commands generate on independent seed streams indexed by their position in
// the enumeration, so the pool is identical for any worker count. Ids are
// assigned 0..n-1 in command-major order.
std::vector<Example> generate_pool(const SuiteConfig& suite, uint64_t master_seed, int jobs);

// generate_pool + split assignment for the suite.
SplitMap generate_suite(const SuiteConfig& suite, uint64_t master_seed, int jobs);

}  // namespace gridforge
