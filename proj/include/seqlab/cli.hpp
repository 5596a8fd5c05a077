#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace seqlab::cli {

/// Exit statuses of the command line.
inline constexpr int kExitOk = 0;
inline constexpr int kExitSolverFailure = 1;
inline constexpr int kExitConfigError = 2;

/// Runs one command. `args` excludes the program name. Results go to `out`
/// (or to --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace seqlab::cli
