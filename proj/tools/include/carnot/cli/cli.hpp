#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace carnot::cli {

/// Exit codes.
enum Exit : int {
  kOk = 0,
  kCheckFailed = 1,
  kUsage = 2,
  kMalformedInput = 3,
  kLayoutMismatch = 4,
  kDomain = 5,
  kInternal = 6,
};

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace carnot::cli
