#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hmknf {

/// Exit codes of the hmknf tool.
enum ExitCode : int { kExitOk = 0, kExitError = 1, kExitUsage = 2, kExitInconsistent = 3 };

/// Runs the hmknf command line; args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace hmknf
