#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rectlab::cli {

/// Exit codes: 0 when every asserted inequality passes, 1 when a check fails,
/// 2 on usage, schema or cap errors.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitError = 2;

/// Runs one command line (without the program name). Reports go to out,
/// diagnostics and failure reports to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rectlab::cli
