#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace subrank::cli {

/// Exit codes of the `subrank` tool.
enum ExitCode : int { kOk = 0, kFailed = 1, kInconclusive = 2, kInputError = 3 };

/// Runs one command line. Documents go to `out` (or --out), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
/// Same, with args[0] the first argument after the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace subrank::cli
