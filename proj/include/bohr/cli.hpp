#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bohr {

inline constexpr const char* kVersion = "1.0.0";

// Exit codes of the command-line front end.
enum ExitCode : int {
    kExitOk = 0,
    kExitBadParams = 2,
    kExitPositivity = 3,
    kExitNumerical = 4,
    kExitVerification = 5,
};

// Runs the CLI on argv-style arguments (without the program name) and returns
// the process exit code. Normal output goes to `out` unless --out is given.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Rounds to 12 significant digits (printf %.12g) and reads the value back.
double round12(double x);

} // namespace bohr
