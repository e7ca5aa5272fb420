#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace recant {

// Exit codes of the command-line interface.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;  // recanting district, hedge, positivity failure
inline constexpr int kExitUsage = 2;   // bad arguments, unreadable or malformed input

// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace recant
