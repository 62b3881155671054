#pragma once

#include <string>
#include <vector>

namespace ncarea::cli {

/// Runs the command-line interface. `args` excludes the program name.
/// Exit codes: 0 success, 1 invariant failure, 2 usage/parse error,
/// 3 numerical failure.
int run(const std::vector<std::string>& args);

}  // namespace ncarea::cli
