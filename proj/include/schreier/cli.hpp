#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace schreier::cli {

inline constexpr int kSchemaVersion = 1;

/// Exit codes: 0 success, 2 invalid input or domain error, 3 an answer was
/// not certified although --require-certified was given.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitUncertified = 3;

/// Runs one command; `args` excludes the program name. Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace schreier::cli
