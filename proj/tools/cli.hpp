#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace latticecalc::cli {

inline constexpr const char* kVersion = "0.1.0";

// Runs one subcommand. Returns 0 on success, 2 on a domain violation and 1
// on input, parse or I/O errors; errors are written to `err` as one JSON line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace latticecalc::cli
