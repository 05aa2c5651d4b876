#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace frugal {

enum ExitStatus { ExitOk = 0, ExitInput = 1, ExitScale = 2, ExitVerification = 3 };

/// Runs one `frugal` command. `args` excludes the program name. Results go to
/// `out`, diagnostics to `err`; the return value is the process exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace frugal
