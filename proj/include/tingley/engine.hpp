#pragma once
// Reconstruction: given only oracle access to a sphere bijection, recover the
// hidden point map, unimodular weight, and conjugation locus, build the
// positively homogeneous extension, and certify it.  Probes are tiny families
// of indicator-shaped sphere points whose images pin down where mass goes;
// phases are read off a root-of-unity grid; orientation comes from how the
// grid turns under multiplication by i.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tingley/factory.hpp"

namespace tingley {

// Where the face at (x, lambda) lands: the target point carrying the image
// face and the value observed there.
struct FaceImage {
  std::string point;     // y in the target (point id for bundles)
  Complex value;         // image value at y
  bool conjugated;       // phase turned against the probe grid
};

// ---- scalar side ----

struct PointPhaseRow {
  std::string x;                 // source point
  std::string y;                 // phi^{-1} partner in the target
  std::vector<Complex> alpha;    // alpha_x(lambda) over the probe grid
  bool conjugated;               // grid orientation at this point
};

struct ScalarPhaseTable {
  std::vector<Complex> grid;     // probe phases lambda (16th roots by default)
  std::vector<PointPhaseRow> rows;  // one per source point, domain order
};

// Locates the image of the face at (x, lambda): probes with lambda*1_x and
// the bumped variants lambda*(1_x + 1_{x'}/2), keeps the target points where
// every probe image is unimodular with one common value, and disambiguates
// through the inverse oracle when several candidates survive.
FaceImage probe_face_image(const ScalarOracle& o, const std::string& x,
                           Complex lambda, double tol);

ScalarPhaseTable compute_phase_table(const ScalarOracle& o, int grid_size,
                                     double tol);

struct ScalarReconstruction {
  ScalarWcoSpec spec;            // recovered data, target -> domain direction
  ScalarPhaseTable table;
  double extension_residual;     // worst ||T f - Delta f|| on sphere samples
  double isometry_residual;      // worst distance distortion over pairs
  bool ok;
  std::uint64_t seed;
  ComplexFunction extend(const ComplexFunction& f) const;  // positively homogeneous T
};

ScalarReconstruction reconstruct_scalar(const ScalarOracle& o, int grid_size,
                                        int samples, double tol,
                                        std::uint64_t seed);

// ---- equivariant side ----

struct OrbitPhaseRow {
  std::string x_orbit;
  std::string y_orbit;
  int offset;                    // recovered rotation w^j
  std::vector<Complex> sigma;    // sigma(t0, mu) over the grid
  bool conjugated;
};

struct BundlePhaseTable {
  std::vector<Complex> grid;
  std::vector<OrbitPhaseRow> rows;
};

// Same probing against equivariant orbit indicators; candidate faces are
// rewritten over the transversal before dedup so one face never counts twice.
FaceImage probe_face_image(const BundleOracle& o, const std::string& t0,
                           Complex mu, double tol);

BundlePhaseTable compute_phase_table(const BundleOracle& o, int grid_size,
                                     double tol);

struct BundleReconstruction {
  BundleWcoSpec spec;
  BundlePhaseTable table;
  double extension_residual;
  double isometry_residual;
  bool ok;
  std::uint64_t seed;
  EquivariantFunction extend(const EquivariantFunction& a) const;
};

BundleReconstruction reconstruct_bundle(const BundleOracle& o, int grid_size,
                                        int samples, double tol,
                                        std::uint64_t seed);

// ---- certification helpers ----

struct IdentityCheck {
  std::string name;
  int trials = 0;
  double worst = 0.0;
  bool ok = false;
};

// Re-runs the constructive identities (antipodal witness separation, average
// peaking intersection, phase-peak transform, disjoint support distance,
// face correction bound, profile split / face blend) on `trials` random
// inputs per identity.  Equality checks use tight_tol, bounds use tol.
std::vector<IdentityCheck> run_identity_checks(int trials, std::uint64_t seed);

// Cross-checks a finished reconstruction against fresh samples; the residual
// is the worst deviation between the recovered map and the oracle.
double consistency_check(const ScalarReconstruction& r, const ScalarOracle& o,
                         int samples, std::uint64_t seed);
double consistency_check(const BundleReconstruction& r, const BundleOracle& o,
                         int samples, std::uint64_t seed);

// Exhaustive census of the permutations of the 4th roots of unity: which are
// isometries of the discrete circle, and are they all rotations/reflections.
struct CensusResult {
  int permutations = 0;
  int isometries = 0;
  bool all_rotation_or_reflection = false;
};
CensusResult circle_isometry_census();

// Report JSON shared by both sides; see the CLI contract.
Json report_json(const ScalarReconstruction& r);
Json report_json(const BundleReconstruction& r);

}  // namespace tingley
