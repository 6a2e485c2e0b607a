#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace flskit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitTestFailure = 1; // tests ran, verdict fail
inline constexpr int kExitUsage = 2;       // usage/format/IO error

/// Runs one command invocation. `args` excludes the program name. Human
/// output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

} // namespace flskit::cli
