#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace expobasis::cli {

enum ExitCode : int { ok = 0, precondition = 1, verification_failed = 2, malformed_json = 3 };

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace expobasis::cli
