// Acceptance criteria 1-10 at the pinned tolerances. Optional arguments name
// a subset of criteria to run.

#include <cstdio>
#include <string>
#include <vector>

#include "ballneedlets/acceptance.hpp"

int main(int argc, char** argv) {
  using namespace ballneedlets;
  std::vector<std::string> only(argv + 1, argv + argc);
  try {
    const auto results = run_acceptance(RunConfig{}, only, [](const CriterionResult& r) {
      std::printf("%s\n", format_line(r).c_str());
      std::fflush(stdout);
    });
    int failed = 0;
    for (const auto& r : results) failed += r.passed ? 0 : 1;
    std::printf("%d of %zu criteria passed\n", static_cast<int>(results.size()) - failed, results.size());
    return failed == 0 ? 0 : 1;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  }
}
