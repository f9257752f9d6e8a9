#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace newcomb::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes. Nothing else is ever returned.
enum Exit : int {
  kOk = 0,            ///< success, or a consistent verdict
  kInconsistent = 1,  ///< consistency check found a contradiction
  kInputError = 2,    ///< malformed scenario/profile or other bad input data
  kUsageError = 3,    ///< bad flags or flag combinations
};

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace newcomb::cli
