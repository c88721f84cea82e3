#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace zplie::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 2,
  kInconsistent = 3,
  kIoError = 4,
};

/// Runs one command line (without the program name). Artifacts go to the
/// --out directory; a short summary goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zplie::cli
