#pragma once

// Command-line front end. `run` is the whole program minus process plumbing,
// so tests drive it in-process.

#include <iosfwd>
#include <string>
#include <vector>

namespace actionwave::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerifyFailed = 1,
  kDomainError = 2,
  kOverflow = 3,
};

/// args excludes the program name. Table/report output goes to `out` unless
/// --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace actionwave::cli
