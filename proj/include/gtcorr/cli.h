#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gtcorr::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;       // bad flags, unreadable or malformed input
inline constexpr int kExitInfeasible = 2;  // ground-truth error >= validation error

// Runs the command line (args excludes the program name). The report goes to
// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gtcorr::cli
