#include "tingley/rng.hpp"

#include <cmath>
#include <numeric>

namespace tingley {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  // splitmix64 finalizer over the salted seed.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double Rng::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

std::size_t Rng::index(std::size_t n) {
  if (n == 0) throw PreconditionError("Rng::index: empty range");
  // Rejection keeps the draw unbiased for any n.
  const std::uint64_t limit = ~0ull - (~0ull % n);
  std::uint64_t v = next_u64();
  while (v >= limit) v = next_u64();
  return static_cast<std::size_t>(v % n);
}

Complex Rng::unit_disk() {
  for (;;) {
    double x = uniform(-1.0, 1.0);
    double y = uniform(-1.0, 1.0);
    if (x * x + y * y < 1.0) return Complex(x, y);
  }
}

Complex Rng::unimodular() {
  const double theta = uniform(0.0, 2.0 * M_PI);
  return Complex(std::cos(theta), std::sin(theta));
}

Complex Rng::quantized_phase(int m) {
  if (m <= 0) throw PreconditionError("Rng::quantized_phase: order must be positive");
  return root_of_unity(static_cast<long>(index(static_cast<std::size_t>(m))), m);
}

std::vector<std::size_t> Rng::permutation(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) {
    std::size_t j = index(i);
    std::swap(p[i - 1], p[j]);
  }
  return p;
}

}  // namespace tingley
