#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nilsson::cli {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUser = 1;       // parse error or violated precondition
inline constexpr int kExitNumerical = 2;  // ill-conditioned fit, non-convergent iteration
inline constexpr int kExitInternal = 3;   // internal assertion

// Runs one command. `args` excludes the program name, e.g.
// {"gamma-series", "--gamma", "1/2", "--order", "2"}. JSON results go to
// `out` (or to the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nilsson::cli
