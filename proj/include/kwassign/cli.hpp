#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kwassign::cli {

// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // validation or other module error
inline constexpr int kExitUsage = 2;

// Runs one command line. args[0] is the program name. Regular output goes to
// `out` unless --output redirects it; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kwassign::cli
