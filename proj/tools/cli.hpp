#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace strel::cli {

// Exit codes.
inline constexpr int ok = 0;
inline constexpr int parse_failure = 1;     // formula syntax
inline constexpr int semantic_failure = 2;  // names, configs, bad arguments
inline constexpr int io_failure = 3;        // missing or malformed files

/// Runs the command line `args` (without the program name). Results go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace strel::cli
