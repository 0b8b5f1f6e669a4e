#pragma once
// Command-line front end: gen / reconstruct / suite, shared flag parsing, and
// an in-process entry point the tests call without spawning a shell.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tingley/common.hpp"

namespace tingley {

// Exit codes: 0 success, 2 bad input or validation failure, 3 structural
// oracle inconsistency, 4 residual-flagged report.  The report is written on
// 3 and 4 as well, with whatever was recovered before the failure.
enum ExitCode : int {
  kOk = 0,
  kBadInput = 2,
  kInconsistent = 3,
  kFlagged = 4,
};

struct RunConfig {
  std::string command;  // gen | reconstruct | suite
  int section = 2;
  std::uint64_t seed = 1;
  bool seed_given = false;
  double tol = 1e-9;
  int probes = 16;
  int samples = 1000;
  int size = 4;      // |X| for scalar instances
  int n = 4;         // circle order for bundle instances
  int orbits = 3;    // base size for bundle instances
  int trials = 200;  // suite: instances per round-trip criterion (200 = full)
  std::string format = "json";  // json | text
  std::string out;              // output path, empty = stdout
  std::string in;               // instance path for reconstruct, empty = stdin
  std::optional<std::pair<std::string, double>> perturb;  // point:mag
};

// argv -> config; throws ParseError with a usage message on bad flags.
// Seed falls back to TINGLEY_LAB_SEED when the flag is absent.
RunConfig parse_cli(const std::vector<std::string>& args);

int cmd_gen(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_reconstruct(const RunConfig& cfg, std::istream& in, std::ostream& out,
                    std::ostream& err);
int cmd_suite(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Dispatches to the command handlers; never throws.
int run_cli(const std::vector<std::string>& args, std::istream& in,
            std::ostream& out, std::ostream& err);

}  // namespace tingley
