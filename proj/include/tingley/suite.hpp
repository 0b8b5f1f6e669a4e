#pragma once
// The acceptance battery: eight criteria run at a configurable scale, each
// reporting pass/fail, counts, worst residuals, and wall time.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tingley/core.hpp"

namespace tingley {

struct SuiteConfig {
  std::uint64_t seed = 1;
  // Criterion scales; the defaults are the full contract sizes.
  int scalar_instances = 200;
  int bundle_instances = 200;
  int identity_trials = 1000;
  int haar_trials = 1000;
  int projection_probes = 20;
  int perturbed_runs = 50;
  int isometry_pairs = 10000;    // per stored instance
  int extension_samples = 1000;  // sphere samples per scalar instance
  int bundle_points = 100;       // agreement points per bundle instance
  int probe_grid = 16;
  double tol = 1e-9;
  double tight_tol = 1e-12;
};

// Shrinks every count by roughly `factor` (at least 1 each) for quick runs.
SuiteConfig scaled_config(const SuiteConfig& base, double factor);

struct CriterionResult {
  std::string name;
  bool ok = false;
  int trials = 0;
  int failures = 0;
  double worst = 0.0;
  double seconds = 0.0;
  std::string detail;  // one-line summary of what was measured
};

// Runs all eight criteria in order, streaming one line per criterion through
// `emit` as each finishes.  Returns the results; overall pass = all ok.
std::vector<CriterionResult> run_acceptance(
    const SuiteConfig& cfg, const std::function<void(const CriterionResult&)>& emit);

Json to_json(const std::vector<CriterionResult>& results);

}  // namespace tingley
