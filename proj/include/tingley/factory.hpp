#pragma once
// Ground-truth side of the pipeline: hidden weighted-composition data, the
// sphere-to-sphere oracles they induce, random instance generation, seeded
// perturbations for negative tests, and the isometry verifier.  Oracles carry
// the forward and inverse maps as opaque callables; the reconstruction engine
// never reads the spec fields.

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tingley/algebra.hpp"
#include "tingley/bundle.hpp"
#include "tingley/core.hpp"
#include "tingley/rng.hpp"

namespace tingley {

// Scalar model: T(f)(y) = kappa(y) * f(phi(y)) on K, conj(kappa(y) * f(phi(y)))
// off K.  kappa unimodular, phi a bijection Y -> X.
struct ScalarWcoSpec {
  PointSpacePtr domain;  // X, where arguments live
  PointSpacePtr target;  // Y
  std::map<std::string, Complex> kappa;    // by y
  std::set<std::string> linear_part;       // K subset of Y
  std::map<std::string, std::string> phi;  // y -> x

  void validate() const;  // throws PreconditionError
};

// Equivariant model: orbitwise composition with per-orbit rotation offsets;
// conjugation on orbits outside D is taken on base values and re-equivariantized
// so the image stays in the equivariant space.
struct BundleWcoSpec {
  BundlePtr domain;  // over X
  BundlePtr target;  // over Y, same order n
  std::set<std::string> linear_part;             // D: X orbits mapped linearly
  std::map<std::string, std::string> orbit_map;  // Y orbit -> X orbit
  std::map<std::string, int> offsets;            // Y orbit -> j, rotation w^j

  void validate() const;
};

ScalarWcoSpec inverse_spec(const ScalarWcoSpec& s);
BundleWcoSpec inverse_spec(const BundleWcoSpec& s);

ComplexFunction apply_wco(const ScalarWcoSpec& s, const ComplexFunction& f);
EquivariantFunction apply_wco(const BundleWcoSpec& s,
                              const EquivariantFunction& a);

// A unit-sphere bijection handed to the engine as a black box.  `forward`
// and `inverse` reject off-sphere arguments (tol 1e-6) with PreconditionError.
struct ScalarOracle {
  PointSpacePtr domain;
  PointSpacePtr target;
  std::function<ComplexFunction(const ComplexFunction&)> forward;
  std::function<ComplexFunction(const ComplexFunction&)> inverse;
};

struct BundleOracle {
  BundlePtr domain;
  BundlePtr target;
  std::function<EquivariantFunction(const EquivariantFunction&)> forward;
  std::function<EquivariantFunction(const EquivariantFunction&)> inverse;
};

ScalarOracle build_oracle(const ScalarWcoSpec& s);
BundleOracle build_oracle(const BundleWcoSpec& s);

// Random instances.  kappa is drawn from the 16th roots of unity so the
// recovered phases reproduce bit-exactly; phi is a uniform permutation.
ScalarWcoSpec random_scalar_spec(const PointSpacePtr& domain,
                                 const PointSpacePtr& target,
                                 std::uint64_t seed);
BundleWcoSpec random_bundle_spec(const BundlePtr& domain,
                                 const BundlePtr& target, std::uint64_t seed);

// Wraps an oracle so inputs within `tol` (1e-9) of `site` come out wrong: the
// clean image has magnitude `mag` added to the coordinate after its largest
// one (cyclically), then is renormalized back onto the sphere.  The defect
// survives renormalization and moves phases as well as moduli.
ScalarOracle perturb_oracle(const ScalarOracle& o, const ComplexFunction& site,
                            double mag);
BundleOracle perturb_oracle(const BundleOracle& o,
                            const EquivariantFunction& site, double mag);

struct VerifyResult {
  bool ok = false;
  double worst = 0.0;  // worst |  ||Du - Dv|| - ||u - v||  | seen
  std::string witness_a, witness_b;  // serialized worst pair when not ok
};
// Samples `pairs` random sphere pairs plus targeted near-`hint` pairs when a
// hint is given, and checks the oracle preserves distances within tol.
VerifyResult verify_isometry(const ScalarOracle& o, int pairs, double tol,
                             std::uint64_t seed,
                             const std::optional<ComplexFunction>& hint = {});
VerifyResult verify_isometry(const BundleOracle& o, int pairs, double tol,
                             std::uint64_t seed,
                             const std::optional<EquivariantFunction>& hint = {});

// Uniform-ish sphere samples: coordinates from the unit disk, then the
// function is pushed to the sphere by scaling a coordinate chosen to already
// have the largest modulus up to modulus one.
ComplexFunction random_sphere_point(const PointSpacePtr& space, Rng& rng);
EquivariantFunction random_sphere_point(const BundlePtr& bundle, Rng& rng);

// Instance JSON: {"section": 2, "seed": ..., "X": [...], "Y": [...],
// "kappa": [[re, im], ...] in Y order, "K": [...], "phi": {y: x}} and
// {"section": 3, "seed": ..., "n": ..., "X": [...], "Y": [...], "D": [...],
// "phi": {yOrbit: xOrbit}, "phi_offsets": {yOrbit: j}}.
Json to_json(const ScalarWcoSpec& s);
ScalarWcoSpec scalar_spec_from_json(const Json& j);
Json to_json(const BundleWcoSpec& s);
BundleWcoSpec bundle_spec_from_json(const Json& j);

}  // namespace tingley
