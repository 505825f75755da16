#include <cstdio>
#include <cstdlib>

#include "scx/acceptance.hpp"

int main(int argc, char** argv) {
  scx::AcceptanceOptions opts;
  if (argc > 1) opts.tighten = std::atof(argv[1]);
  bool all = true;
  for (int id = 1; id <= 8; ++id) {
    const scx::CriterionResult r = scx::run_criterion(id, opts);
    std::printf("%s\n", scx::format_result(r).c_str());
    std::fflush(stdout);
    all = all && r.passed;
  }
  return all ? 0 : 1;
}
