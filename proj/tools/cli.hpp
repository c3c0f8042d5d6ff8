#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sslab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitInvariant = 3;

// Runs one command line. `args` excludes the program name. Results go to
// `out` unless --out names a file; diagnostics and witnesses go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sslab
