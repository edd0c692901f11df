#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace twlab::cli {

enum ExitCode : int { kOk = 0, kClaimFailed = 1, kUsage = 2, kResourceLimit = 3 };

/// `args` excludes the program name. Data goes to `out` (or `--out` files),
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args);

}  // namespace twlab::cli
