#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fibkit::cli {

/// Exit codes: 0 pass, 1 verification or proof failure, 2 usage error.
enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2 };

/// Runs the fibkit command line with argv[0] excluded from `args`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace fibkit::cli
