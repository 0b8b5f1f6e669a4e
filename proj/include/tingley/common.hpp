#pragma once
// Shared numeric vocabulary: complex scalars, tolerance policy, exact roots of
// unity, and the error taxonomy used across the library.

#include <complex>
#include <stdexcept>
#include <string>

namespace tingley {

using Complex = std::complex<double>;

// Internal algebraic identities are asserted at kTightTol; user-facing
// comparisons default to kDefaultTol and stay configurable everywhere.
inline constexpr double kTightTol = 1e-12;
inline constexpr double kDefaultTol = 1e-9;

struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Structural contradiction while interrogating an oracle: its responses cannot
// come from a sphere isometry of the assumed form.  Distinct from the numeric
// residual channel, so callers can tell the two failure modes apart.  Carries
// the disagreement magnitude that triggered it (0 for purely combinatorial
// contradictions).
struct OracleInconsistent : std::runtime_error {
  double residual;
  OracleInconsistent(const std::string& what, double res)
      : std::runtime_error(what), residual(res) {}
};

// e^{2*pi*i*k/m}, with bit-exact values at the quadrant points so quantized
// phases survive probe round-trips without drift.
Complex root_of_unity(long k, long m);

// Nearest n-th root of unity to the phase of z, plus the snap distance.
struct PhaseSnap {
  int index;        // j with root_of_unity(j, n) closest in phase
  double residual;  // |z - root_of_unity(j, n)|
};
PhaseSnap snap_phase(Complex z, int n);

inline bool approx(Complex a, Complex b, double tol) {
  return std::abs(a - b) <= tol;
}
inline bool approx(double a, double b, double tol) {
  return std::abs(a - b) <= tol;
}

}  // namespace tingley
