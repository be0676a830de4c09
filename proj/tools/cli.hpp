#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kgc::cli {

// Exit codes.
inline constexpr int kAffirmative = 0;
inline constexpr int kNegative = 1;
inline constexpr int kUnknown = 2;
inline constexpr int kUsage = 3;

/// Runs one command line. `args` excludes the program name.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace kgc::cli
