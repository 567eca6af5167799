#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hwkit {

// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitFileNotFound = 3,
  kExitParse = 4,
  kExitNumeric = 5,
};

// Runs the tool on args (program name excluded). Results go to `out`
// unless --out is given; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hwkit
