#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace greenwalk::cli {

enum ExitCode : int { kOk = 0, kInvalid = 1, kIntegrity = 2 };

/// Runs one command. `args` excludes the program name. Artifacts go to `out`,
/// diagnostics and residual reports to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace greenwalk::cli
