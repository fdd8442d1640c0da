#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sqbath::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitNumeric = 3,
  kExitInternal = 4,
};

/// Runs one invocation; `args` excludes the program name. Results go to
/// `out` unless --out names a file (or, for figures, a directory).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Worker count for sweeps: hardware concurrency capped by SQBATH_THREADS.
unsigned sweep_threads();

}  // namespace sqbath::cli
