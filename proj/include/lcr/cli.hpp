#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lcr::cli {

// Process exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFails = 1;
inline constexpr int kUsage = 2;
inline constexpr int kMalformed = 3;
inline constexpr int kBudget = 4;

/// Runs one command line (without the program name). Results go to `out` as
/// JSON, or as indented text with --pretty; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace lcr::cli
