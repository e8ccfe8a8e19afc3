#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fracvex::cli {

/// Exit codes: 0 success / satisfied / convex, 1 violated, 2 error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolated = 1;
inline constexpr int kExitError = 2;

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Expands "start:stop:step" (stop included when it lands within 1e-12), a
/// comma list, or a single value. Every value must be a valid alpha.
std::vector<double> parse_alpha_range(const std::string& text);

}  // namespace fracvex::cli
