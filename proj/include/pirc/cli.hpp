#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pirc::cli {

// Exit codes.
inline constexpr int kOk = 0;            // verdict produced, positive or negative
inline constexpr int kInternal = 1;      // unexpected failure
inline constexpr int kUsage = 2;         // bad subcommand or flags
inline constexpr int kBadInput = 3;      // malformed input file
inline constexpr int kIncomplete = 4;    // budget exhausted or checkpoint problem

// args excludes the program name. Reports go to `out`, progress and errors
// to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pirc::cli
