// Thin JSON-string bridge: the heavy lifting stays in C++, Python gets
// strings it can json.loads.  Keeps the binding layer free of converter code.

#include <pybind11/pybind11.h>

#include <sstream>

#include "tingley/cli.hpp"
#include "tingley/engine.hpp"
#include "tingley/suite.hpp"

namespace py = pybind11;
using namespace tingley;

namespace {

std::string gen_instance_json(int section, std::uint64_t seed, int size, int n,
                              int orbits) {
  RunConfig cfg;
  cfg.command = "gen";
  cfg.section = section;
  cfg.seed = seed;
  cfg.seed_given = true;
  cfg.size = size;
  cfg.n = n;
  cfg.orbits = orbits;
  std::ostringstream out, err;
  int code = cmd_gen(cfg, out, err);
  if (code != kOk) throw std::invalid_argument(err.str());
  return out.str();
}

std::string reconstruct_json(const std::string& instance_text, int probes,
                             int samples, double tol, std::uint64_t seed) {
  RunConfig cfg;
  cfg.command = "reconstruct";
  cfg.seed = seed;
  cfg.seed_given = true;
  cfg.probes = probes;
  cfg.samples = samples;
  cfg.tol = tol;
  std::istringstream in(instance_text);
  std::ostringstream out, err;
  int code = cmd_reconstruct(cfg, in, out, err);
  if (code == kBadInput) throw std::invalid_argument(err.str());
  // 0, 3, 4 all come back with a report; the caller reads "ok".
  return out.str();
}

std::string run_suite_json(int trials, std::uint64_t seed) {
  SuiteConfig cfg;
  cfg.seed = seed;
  auto scaled = scaled_config(cfg, trials / 200.0);
  auto results = run_acceptance(scaled, [](const CriterionResult&) {});
  return to_json(results).dump(2);
}

std::string census_json() {
  auto c = circle_isometry_census();
  Json j;
  j["permutations"] = c.permutations;
  j["isometries"] = c.isometries;
  j["all_rotation_or_reflection"] = c.all_rotation_or_reflection;
  return j.dump(2);
}

}  // namespace

PYBIND11_MODULE(_tingley, m) {
  m.doc() = "sphere-isometry reconstruction lab";
  m.def("gen_instance_json", &gen_instance_json, py::arg("section"),
        py::arg("seed") = 1, py::arg("size") = 4, py::arg("n") = 4,
        py::arg("orbits") = 3,
        "Generate a random hidden-map instance as a JSON string.");
  m.def("reconstruct_json", &reconstruct_json, py::arg("instance_text"),
        py::arg("probes") = 16, py::arg("samples") = 1000,
        py::arg("tol") = 1e-9, py::arg("seed") = 1,
        "Rebuild the hidden map from oracle probes; returns the report JSON.");
  m.def("run_suite_json", &run_suite_json, py::arg("trials") = 200,
        py::arg("seed") = 1, "Run the acceptance battery at a given scale.");
  m.def("census_json", &census_json,
        "Census of discrete circle permutations vs isometries.");
  m.def("version", [] { return "1.0.0"; });
}
