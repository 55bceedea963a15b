#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stadium {

// Exit codes: 0 claim verified / operation succeeded, 1 counterexample found
// or configuration not realizable, 2 usage or validation error.
enum ExitCode : int { kExitOk = 0, kExitRefuted = 1, kExitUsage = 2 };

// Runs one command line (without the program name).
int run_command(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace stadium
