#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace stalab::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsageError = 1;      ///< bad flags, unreadable or malformed input
inline constexpr int kNotInterfering = 2;  ///< final arm velocities differ

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stalab::cli
