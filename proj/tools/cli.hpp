#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mhaar::cli {

// Runs one command line (args exclude the program name). Exit codes: 0 success,
// 1 malformed input, 2 precondition or hypothesis failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace mhaar::cli
