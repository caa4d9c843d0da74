#pragma once

#include <iosfwd>

namespace ndfluents::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kViolations = 1;
inline constexpr int kUsageError = 2;

// Runs the command line; data goes to `out`, logs and errors to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ndfluents::cli
