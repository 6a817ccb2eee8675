#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace psm::cli {

/// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitCheckFailed = 2;

/// Runs `psm <subcommand> [flags]`; args excludes the program name.  Reports
/// go to `out` unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace psm::cli
