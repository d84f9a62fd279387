#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace twofold::cli {

enum ExitCode : int { ok = 0, numeric_failure = 1, usage_error = 2 };

// Entry point shared by the executable and the tests. Results go to `out`
// unless --output names a file; diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twofold::cli
