#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mtpp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitTooLarge = 3;

// Runs one command line (without the program name) and returns the exit
// code. Commands: generate, partition, bound, report; see --help.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mtpp::cli
