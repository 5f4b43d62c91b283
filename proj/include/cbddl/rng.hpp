// Seeded random stream with explicit value transforms.
//
// std::mt19937_64 output is fully specified by the standard, but the
// standard distributions are not; every transform here is written out so
// identical seeds give identical draws on any platform.
#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace cbddl {

uint64_t fnv1a64(std::string_view s);

// Per-task / per-episode seed derivation: mixes the base seed with a
// stable hash of the label and the index so partial re-runs reproduce
// full-run results.
uint64_t derive_seed(uint64_t base, std::string_view label, uint64_t index = 0);

class RandomStream {
 public:
  explicit RandomStream(uint64_t seed) : engine_(seed) {}

  // [0, 1), 53-bit resolution.
  double uniform01();
  // [a, b)
  double uniform(double a, double b);
  // Box-Muller; pairs are cached so draws come in a fixed engine order.
  double normal(double mean, double stddev);
  // [0, n), exact-uniform via masked rejection. n must be > 0.
  uint64_t uniform_int(uint64_t n);

  uint64_t next_raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace cbddl
