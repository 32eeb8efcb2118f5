#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace memsig {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitParse = 2,
  kExitShape = 3,
  kExitRelation = 4,
};

/// Runs the tool on args (without the program name). Output goes to out,
/// diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace memsig
