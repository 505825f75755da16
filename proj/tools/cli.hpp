#pragma once

// `scx` command-line front end. Data goes to `out` (or --out), diagnostics
// to `err`.

#include <iosfwd>
#include <string>
#include <vector>

namespace scx::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailure = 1,
  kInputError = 2,
  kResourceGuard = 3,
};

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace scx::cli
