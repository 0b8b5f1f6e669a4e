// Acceptance battery at full contract scale.  Prints one line per criterion
// and exits nonzero if any fails.  Run through ctest or directly:
//   ./acceptance [seed]

#include <cstdio>
#include <cstdlib>

#include "tingley/suite.hpp"

int main(int argc, char** argv) {
  tingley::SuiteConfig cfg;
  if (argc > 1) cfg.seed = std::strtoull(argv[1], nullptr, 10);

  int failed = 0;
  auto results = tingley::run_acceptance(cfg, [&](const tingley::CriterionResult& c) {
    std::printf("[%s] %-22s trials=%-6d failures=%-3d worst=%.3e  %.2fs  %s\n",
                c.ok ? "PASS" : "FAIL", c.name.c_str(), c.trials, c.failures,
                c.worst, c.seconds, c.detail.c_str());
    std::fflush(stdout);
    if (!c.ok) ++failed;
  });

  double total = 0.0;
  for (const auto& c : results) total += c.seconds;
  std::printf("%d/%zu criteria passed in %.2fs\n", static_cast<int>(results.size()) - failed,
              results.size(), total);
  return failed == 0 ? 0 : 1;
}
