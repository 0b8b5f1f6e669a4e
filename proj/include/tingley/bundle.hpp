#pragma once
// The equivariant model: a free action of the n-th roots of unity on a finite
// set, the equivariant function space with its pointwise triple product, the
// Haar averaging projection, radial functional calculus, M-summands, and the
// facial structure of the unit ball.  The circle is discretized to the cyclic
// group C_n; function values stay full complex numbers, so faces, the Haar
// average, M-summands, and the reconstruction pipeline are exactly
// representable.  Non-free orbits are rejected at construction (they would
// collapse the evaluation functionals).

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tingley/core.hpp"
#include "tingley/rng.hpp"

namespace tingley {

// Total space = base x {0..n-1}; the point (orbit, k) stands for w^k * t0 with
// w = e^{2*pi*i/n} and t0 the k = 0 representative.  Point ids are "orbit@k".
class FiniteTBundle {
 public:
  FiniteTBundle(int n, std::vector<std::string> base);

  int order() const { return n_; }
  const std::vector<std::string>& base() const { return base_; }
  std::size_t orbit_count() const { return base_.size(); }
  std::size_t orbit_index(std::string_view orbit) const;
  bool has_orbit(std::string_view orbit) const;

  // Total space in orbit-major, phase-minor order.
  const PointSpacePtr& total_space() const { return total_; }
  std::string point_id(std::string_view orbit, int k) const;
  // Splits "orbit@k"; validates membership.
  std::pair<std::string, int> locate(std::string_view point_id) const;
  // The action: w^j * point.
  std::string rotate(std::string_view point_id, int j) const;

  friend bool operator==(const FiniteTBundle& a, const FiniteTBundle& b) {
    return a.n_ == b.n_ && a.base_ == b.base_;
  }

 private:
  int n_;
  std::vector<std::string> base_;
  std::map<std::string, std::size_t, std::less<>> base_index_;
  PointSpacePtr total_;
};

using BundlePtr = std::shared_ptr<const FiniteTBundle>;

BundlePtr make_bundle(int n, std::vector<std::string> base);

// a(w^k t0) = w^k * base_value(orbit): determined by one value per orbit.
class EquivariantFunction {
 public:
  EquivariantFunction(BundlePtr bundle, std::vector<Complex> base_values);

  static EquivariantFunction zero(const BundlePtr& b);
  static EquivariantFunction orbit_indicator(const BundlePtr& b,
                                             std::string_view orbit);

  const BundlePtr& bundle() const { return bundle_; }
  const std::vector<Complex>& base_values() const { return base_values_; }
  Complex operator[](std::size_t i) const { return base_values_[i]; }
  Complex base_value(std::string_view orbit) const;
  Complex value_at(std::string_view point_id) const;  // w^k * base value
  ComplexFunction to_function() const;                // on the total space

  EquivariantFunction with_base_value(std::string_view orbit, Complex v) const;

  friend EquivariantFunction operator+(const EquivariantFunction&,
                                       const EquivariantFunction&);
  friend EquivariantFunction operator-(const EquivariantFunction&,
                                       const EquivariantFunction&);
  friend EquivariantFunction operator*(Complex, const EquivariantFunction&);

 private:
  BundlePtr bundle_;
  std::vector<Complex> base_values_;
};

double sup_norm(const EquivariantFunction& a);
bool sphere_check(const EquivariantFunction& a, double tol);

// Face of the equivariant unit ball: {a : a(t0) = mu}, labeled canonically by
// a transversal representative (the face at (nu*t0, mu) equals the face at
// (t0, conj(nu)*mu)).
struct BundleFace {
  std::string t0;  // point id, canonical when on the transversal
  Complex mu;      // unimodular
};

// Averaging a(w^j t) against w^-j: a contractive projection of C(total space)
// onto the equivariant functions.
EquivariantFunction haar_projection(const ComplexFunction& a,
                                    const BundlePtr& bundle);

// Pointwise a * conj(b) * c; conjugate-linear in the middle slot.
EquivariantFunction triple_product(const EquivariantFunction& a,
                                   const EquivariantFunction& b,
                                   const EquivariantFunction& c);

// |a|^{2m} * a pointwise; the m-fold odd power under the triple product.
EquivariantFunction odd_power(const EquivariantFunction& a, int m);

// Piecewise-linear radial profile on [0,1] with g(0) = 0, knots at declared
// breakpoints, linear interpolation between them.  All proof profiles are
// represented exactly.
class RadialProfile {
 public:
  // Knots must start at s = 0 with value 0, end at s = 1, s strictly increasing.
  explicit RadialProfile(std::vector<std::pair<double, double>> knots);

  double operator()(double s) const;
  const std::vector<std::pair<double, double>>& knots() const { return knots_; }

  static RadialProfile identity();
  // 0 on [0, delta], affine up to (1, 1).
  static RadialProfile threshold(double delta);

 private:
  std::vector<std::pair<double, double>> knots_;
};

// Phase-preserving composition: value (a(t)/|a(t)|) * g(|a(t)|), 0 where a = 0.
EquivariantFunction functional_calculus(const RadialProfile& g,
                                        const EquivariantFunction& a);

// Splits a profile with g(1) = 1 into (f_eps, g_eps) with
// (1 - eps/2) g_eps(s) + (eps/2) f_eps(s) = s exactly: f_eps vanishes on
// [0, eps/2], follows g on [eps, 1-eps), plateaus at 1 from 1 - eps/2 on.
std::pair<RadialProfile, RadialProfile> convex_profile_split(
    const RadialProfile& g, double eps);

// Equivariant Urysohn witness: h(t0) = mu, h equivariant, ||h|| = 1, h = 0 on
// every orbit outside W (W given as a set of orbit ids and must contain
// t0's orbit).  Constructively discharges the non-emptiness of every face.
EquivariantFunction urysohn_equivariant(const BundlePtr& bundle,
                                        std::string_view t0,
                                        const std::set<std::string>& w_orbits,
                                        Complex mu);

// All invariant clopen subsets = all 2^{|base|} orbit unions, each the range
// indicator of an M-projection.
std::vector<std::set<std::string>> enumerate_m_summands(const BundlePtr& b);

struct MProjectionResult {
  bool is_m_projection = false;
  std::optional<std::set<std::string>> summand;  // matching orbit union
  double worst_residual = 0.0;  // worst M-identity violation observed
};
// P is a linear map given by its matrix on the orbit-indicator basis.  Throws
// PreconditionError unless P is idempotent within tol.  True iff the
// M-identity ||a|| = max(||Pa||, ||a - Pa||) holds on the basis and `samples`
// random functions; on success the matching invariant orbit union is attached
// (the classification is exhaustive, so a passing P must be an indicator).
MProjectionResult m_projection_check(
    const BundlePtr& bundle, const std::vector<std::vector<Complex>>& matrix,
    int samples, double tol, std::uint64_t seed);

// Canonical k = 0 representatives, one per orbit, in base order.  Maximal
// non-overlapping: every point factors uniquely as w^k * representative.
std::vector<std::string> transversal(const BundlePtr& b);

// Rewrites the face at (t, mu) over the transversal representative of t.
BundleFace canonical_face_label(const BundlePtr& b, std::string_view t,
                                Complex mu);

// Flattening pair for pulling a toward the face at t0: a_eps flattens |a|
// near |a(t0)| (||a - a_eps|| <= eps, a_eps(t0) = a(t0)), b_eps is a face
// witness supported where |a| < |a(t0)| + eps/2.  For every 0 < r < 1,
// blend(r) = r*a_eps + (1 - r|a(t0)|)*lambda*b_eps lies in the face
// (t0, lambda), lambda = phase of a(t0) (1 when a(t0) = 0).  Requires
// ||a|| <= 1, |a(t0)| < 1 and |a(t0)| + eps < 1.
struct BlendPair {
  EquivariantFunction a_eps;
  EquivariantFunction b_eps;
  Complex lambda;
  double a_t0_mod;                       // |a(t0)|
  std::optional<RadialProfile> profile;  // absent on the a(t0) = 0 branch
  std::set<std::string> w_orbits;
  EquivariantFunction blend(double r) const;
};
BlendPair face_blend_pair(const EquivariantFunction& a, std::string_view t0,
                          double eps);

bool face_membership(const EquivariantFunction& a, const BundleFace& face,
                     double tol);

// JSON formats: bundle {"n": 4, "base": [...]}; equivariant function
// {"n": ..., "base": [...], "base_values": [[re, im], ...]} aligned to base
// order.
Json to_json(const FiniteTBundle& b);
BundlePtr bundle_from_json(const Json& j);
Json to_json(const EquivariantFunction& a);
EquivariantFunction equivariant_from_json(const Json& j);

}  // namespace tingley
