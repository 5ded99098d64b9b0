#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace vrid::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCellFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs the `vrid` command line. `args` excludes the program name.
/// Environment: VRID_OUTPUT_DIR replaces the default or configured output
/// directory (an explicit --out still wins); VRID_JOBS sets the worker count
/// unless --jobs is given.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vrid::cli
