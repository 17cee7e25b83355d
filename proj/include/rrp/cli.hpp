#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rrp::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;  // also "yes" for decide
inline constexpr int kExitNo = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitUnknown = 4;

// Runs one command; `args` includes the program name. The result document
// (JSON) goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rrp::cli
