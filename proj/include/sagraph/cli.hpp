#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sagraph {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitQualified = 2;
inline constexpr int kExitInput = 3;
inline constexpr int kExitNumerical = 4;

/// Runs one sa-graph invocation. `args` excludes the program name. JSON goes
/// to `out`, the human-readable summary and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sagraph
