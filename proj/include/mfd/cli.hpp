#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mfd::cli {

enum ExitCode : int {
  ok = 0,
  refuted = 1,
  unknown = 2,
  usage = 64,
  rejected = 65,
  internal = 70,
};

// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mfd::cli
