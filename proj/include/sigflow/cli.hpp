#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sigflow {

enum ExitCode { kExitOk = 0, kExitFailure = 1, kExitUsage = 2, kExitUnsupported = 3 };

// argv[0] is the program name. Output goes to `out`, diagnostics to `err`.
int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace sigflow
