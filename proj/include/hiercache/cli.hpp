#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hiercache::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kInvariant = 1,  ///< a check ran and failed (rates, theorems, I/O)
  kConfig = 2,
  kDemand = 3,
  kDivisibility = 4,
  kDecode = 5,
};

/// Entry point behind the `hiercache` binary; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hiercache::cli
