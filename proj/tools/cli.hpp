#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace stallings::cli {

/// Runs one command line (without the program name). Exit codes: 0 success,
/// 1 negative result where noted, 2 usage or input error, 3 guard violation,
/// 10/20 local-global outcomes.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stallings::cli
