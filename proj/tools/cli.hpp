#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pmine::cli {

enum ExitCode : int {
  ok = 0,
  internal_failure = 1,
  config_error = 2,
  data_error = 3,
  resource_error = 4,
};

/// Runs one command line (args excludes the program name). Results go to
/// `out` unless --out is given; diagnostics and the summary go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pmine::cli
