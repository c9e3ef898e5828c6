#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qergo::cli {

inline constexpr const char* kVersion = "0.1.0";

// Exit codes: 0 success, 2 invalid input, 3 numerical failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

// args excludes the program name. Results go to `out` unless --out is
// given; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qergo::cli
