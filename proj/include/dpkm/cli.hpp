#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dpkm {

enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_data = 2, exit_algorithm = 3 };

// args excludes the program name. Machine output goes to `out`,
// diagnostics and usage text to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dpkm
