#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace psel::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

// Runs one command line (args[0] is the program name). Results go to `out`,
// diagnostics to `err`. The log level comes from the PSEL_LOG environment
// variable (trace, debug, info, warn, error, off; default warn).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace psel::cli
