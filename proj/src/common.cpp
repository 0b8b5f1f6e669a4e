#include "tingley/common.hpp"

#include <cmath>

namespace tingley {

Complex root_of_unity(long k, long m) {
  if (m <= 0) throw PreconditionError("root_of_unity: order must be positive");
  long kk = k % m;
  if (kk < 0) kk += m;
  // Quadrant multiples are returned bit-exactly so quantized phases compose
  // without drift.
  if ((4 * kk) % m == 0) {
    switch ((4 * kk) / m) {
      case 0: return Complex(1.0, 0.0);
      case 1: return Complex(0.0, 1.0);
      case 2: return Complex(-1.0, 0.0);
      case 3: return Complex(0.0, -1.0);
    }
  }
  const double theta = 2.0 * M_PI * static_cast<double>(kk) / static_cast<double>(m);
  return Complex(std::cos(theta), std::sin(theta));
}

PhaseSnap snap_phase(Complex z, int n) {
  if (n <= 0) throw PreconditionError("snap_phase: order must be positive");
  if (z == Complex(0.0, 0.0))
    throw PreconditionError("snap_phase: zero has no phase");
  PhaseSnap best{0, std::abs(z - root_of_unity(0, n))};
  for (int j = 1; j < n; ++j) {
    double d = std::abs(z - root_of_unity(j, n));
    if (d < best.residual) best = {j, d};
  }
  return best;
}

}  // namespace tingley
