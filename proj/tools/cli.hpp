#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nwalign::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kInput = 2,
  kInternal = 3,
};

// Entry point shared by main() and the tests. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Oracle-equivalence checks; prints one line per check to `out`.
int selftest(std::ostream& out);

}  // namespace nwalign::cli
