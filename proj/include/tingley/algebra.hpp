#pragma once
// The scalar function-algebra model and its explicit sphere-geometry
// constructions.  On a finite discrete space the only strongly separating
// uniformly closed subalgebra is C(X) itself (every evaluation is a distinct
// nonzero character of a reduced finite-dimensional commutative algebra), so
// C(X) is the faithful desk-scale instance and the Choquet boundary is all of
// X.  True subalgebras (disk-algebra style) are out of scope.

#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tingley/core.hpp"

namespace tingley {

// Norm-one function whose modulus-one values all equal 1.
struct PeakingFunction {
  ComplexFunction fn;
  std::vector<std::string> peak_set;  // unit_level_set(fn, kTightTol)

  // Validates the invariants at kTightTol and records the peak set.
  static PeakingFunction wrap(ComplexFunction f);
};

// The maximal proper face {f in S : f(x) = lambda} of the sphere.
struct ScalarFace {
  std::string x;
  Complex lambda;  // unimodular
};

// All points, each with an indicator witness peaking exactly at it.
struct BoundaryPoint {
  std::string x;
  PeakingFunction witness;
};
std::vector<BoundaryPoint> choquet_boundary(const PointSpacePtr& space);

// Peak witness for x supported on O: value 1 at x, eps on the rest of O,
// 0 outside.  Requires x in O, O inside the space, 0 < eps <= 1.
// Deterministic; this is the fixed tie-break wherever a construction says
// "choose a peaking function".
PeakingFunction urysohn_peak(const PointSpacePtr& space, std::string_view x,
                             const std::set<std::string>& O, double eps);

// Given sphere f, g with |f(x0)| = 1 and f(x0) != g(x0), a witness h at sup
// distance exactly 2 from f but strictly less from g.  Separates the faces
// through f and g by distance alone.
ComplexFunction antipodal_witness(const ComplexFunction& f,
                                  const ComplexFunction& g,
                                  std::string_view x0);

// Mean of functions sharing the peak value lambda at a common point; the
// result peaks exactly on the intersection of the inputs' unit level sets.
ComplexFunction average_peaking(const std::vector<ComplexFunction>& fs,
                                Complex lambda);

// (conj(lambda)^2 f^2 + conj(lambda) f)/2: peaks exactly where f = lambda.
PeakingFunction phase_peak_transform(const ComplexFunction& f, Complex lambda);

// Norm-one members of the faces (y, mu) and (y2, mu2) at distance <= 1 < sqrt(2):
// the scaled indicators with disjoint supports.
std::pair<ComplexFunction, ComplexFunction> disjoint_face_witnesses(
    const PointSpacePtr& space, std::string_view y, Complex mu,
    std::string_view y2, Complex mu2);

// Dyadic band correction pulling sphere f into the face at x0 with phase
// lambda = f(x0)/|f(x0)| (lambda = 1 when f(x0) = 0).
struct FaceCorrection {
  ComplexFunction g_r;  // norm-one, g_r(x0) = 1
  ComplexFunction h_r;  // in the face (x0, lambda); ||h_r - f|| <= 2 - r - r|f(x0)|
  Complex lambda;
};
// The general band construction is implemented even though indicators
// shortcut it in the discrete model: the bands and the (1-r)/(1-r|f(x0)|)
// bound are the content; tests keep the indicator shortcut as a cross-check.
FaceCorrection face_correction(const ComplexFunction& f, std::string_view x0,
                               double r);

// true iff f is on the sphere and f(x) = lambda, both within tol.
bool face_membership(const ComplexFunction& f, const ScalarFace& face,
                     double tol);

}  // namespace tingley
