#pragma once

// Command-line front end. Exit codes: 0 success or dual verdict, 1 negative
// verdict, 2 usage or malformed input, 3 capacity exceeded.

#include <ostream>
#include <string>
#include <vector>

namespace fdk::cli {

enum ExitCode : int { kOk = 0, kNegative = 1, kUsage = 2, kCapacity = 3 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fdk::cli
