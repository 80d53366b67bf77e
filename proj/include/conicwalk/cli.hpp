#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace conicwalk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitVerification = 2;
inline constexpr int kExitInternal = 3;

/// Runs one `conicwalk` command. `args` excludes the program name. Results
/// go to `out` unless --out names a file; summaries and diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace conicwalk::cli
