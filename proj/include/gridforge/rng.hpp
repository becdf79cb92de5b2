#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace gridforge {

// Deterministic RNG wrapper. std::mt19937_64 has a fully specified output
// stream, but the standard distributions do not, so draws go through our own
// mapping to keep generated datasets identical across compilers.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next() { return engine_(); }

  // Uniform integer in [0, n). n must be > 0.
  uint64_t below(uint64_t n) {
    // Rejection sampling keeps the draw exactly uniform.
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % n;
  }

  int below_int(int n) { return static_cast<int>(below(static_cast<uint64_t>(n))); }

  bool coin() { return (engine_() & 1) != 0; }

  template <typename T>
  const T& pick(const std::vector<T>& items) {
    return items[below(items.size())];
  }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (size_t i = items.size(); i > 1; --i) {
      size_t j = below(i);
      std::swap(items[i - 1], items[j]);
    }
  }

  // First `count` elements of a random permutation of items, order randomized.
  template <typename T>
  std::vector<T> sample(std::vector<T> items, size_t count) {
    if (count > items.size()) count = items.size();
    for (size_t i = 0; i < count; ++i) {
      size_t j = i + below(items.size() - i);
      std::swap(items[i], items[j]);
    }
    items.resize(count);
    return items;
  }

 private:
  std::mt19937_64 engine_;
};

// splitmix64: cheap, well-mixed combiner for deriving stream seeds.
inline uint64_t mix_seed(uint64_t state) {
  uint64_t z = state + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline uint64_t derive_seed(uint64_t master, std::string_view stream, uint64_t index) {
  uint64_t h = master;
  for (char c : stream) h = mix_seed(h ^ static_cast<uint64_t>(static_cast<unsigned char>(c)));
  return mix_seed(h ^ mix_seed(index));
}

}  // namespace gridforge
