#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hyperglue::cli {

enum ExitCode : int {
  ok = 0,
  runtime_failure = 1,
  usage_error = 2,
  malformed_code = 3,
  missing_file = 4,
  catalog_corrupt = 5,
  budget_exhausted = 6,
};

// args[0] is the program name. Results go to out; failures are reported on
// err as one JSON object {"error": {...}}.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperglue::cli
