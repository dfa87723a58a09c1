// cli.hpp
// Command-line front end. Exit codes: 0 success, 1 verified negative or
// failed bound, 2 input/usage error, 3 search budget exhausted.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ndcert::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitBudget = 3;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ndcert::cli
