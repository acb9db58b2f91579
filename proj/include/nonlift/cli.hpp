#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nonlift::cli {

/// Exit status of `run`.
enum ExitCode : int { Success = 0, Failure = 1, NonLiftable = 2 };

/// Runs the command line `args` (args[0] is the program name). The document
/// goes to `out`, diagnostics to `err`; `--out FILE` additionally writes the
/// document to FILE.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nonlift::cli
