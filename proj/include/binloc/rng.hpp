#pragma once

#include <cstdint>
#include <random>

#include "binloc/geometry.hpp"

namespace binloc {

// One avalanche step of splitmix64; whitens seeds and derives stream keys.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Deterministic RNG wrapper. Draws are produced directly from the mt19937_64
// word stream so sequences are reproducible across standard libraries
// (std::distributions are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

  // Independent stream for a (master seed, worker/trial index) pair.
  static Rng stream(std::uint64_t master_seed, std::uint64_t index) {
    return Rng(mix64(master_seed) ^ mix64(index * 0xD1342543DE82EF95ull + 1));
  }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform() { return (engine_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // 1 with probability p.
  int bernoulli(double p) { return uniform() < p ? 1 : 0; }

  std::size_t index(std::size_t n) {
    auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return i < n ? i : n - 1;
  }

  Vec2 point_in(const Box& b) {
    return {uniform(b.lo.x, b.hi.x), uniform(b.lo.y, b.hi.y)};
  }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace binloc
