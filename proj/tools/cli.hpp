#pragma once

#include <string>
#include <vector>

namespace utm::cli {

// Exit codes of run().
inline constexpr int kOk = 0;
inline constexpr int kValidation = 2;
inline constexpr int kNumerical = 3;

// args excludes the program name. Diagnostics go to stderr, summaries to
// stdout.
int run(const std::vector<std::string>& args);

}  // namespace utm::cli
