#pragma once
// Deterministic randomness.  Every stochastic path in the library flows from a
// single seed; independent streams are derived with a splitmix64 mix so the
// draw count of one consumer never shifts another.

#include <cstdint>
#include <vector>
#include <random>

#include "tingley/common.hpp"

namespace tingley {

// Stateless seed derivation (splitmix64 over seed ^ golden-ratio salt).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

  std::uint64_t seed() const { return seed_; }
  // Independent stream; depends only on (seed, salt), not on draws so far.
  Rng fork(std::uint64_t salt) const { return Rng(mix_seed(seed_, salt)); }

  std::uint64_t next_u64() { return gen_(); }
  double uniform01();  // [0, 1), 53-bit resolution
  double uniform(double lo, double hi);
  std::size_t index(std::size_t n);  // uniform over {0, ..., n-1}
  bool coin() { return (next_u64() & 1u) != 0; }

  Complex unit_disk();            // |z| < 1, rejection sampled
  Complex unimodular();           // uniform phase on the circle
  Complex quantized_phase(int m); // uniform over the m-th roots, exact values
  std::vector<std::size_t> permutation(std::size_t n);  // Fisher-Yates

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
};

}  // namespace tingley
