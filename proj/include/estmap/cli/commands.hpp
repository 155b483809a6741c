#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace estmap::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInputError = 2, kSampleTooSmall = 3 };

/// Parses `args` (without the program name) and runs one subcommand.
/// Summaries go to `out` as one JSON object per line, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace estmap::cli
