#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fflab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 2;    // library error; a JSON error object is printed
inline constexpr int kExitPartial = 3;  // a cap was hit; output carries "partial": true
inline constexpr int kExitUsage = 64;

/// Runs one command line (without the program name). Output goes to `out`,
/// diagnostics and usage text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fflab::cli
