#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace eqdelta::cli {

// Runs one command line (without the program name). Returns the exit code:
// 0 computed, 1 error, 2 obstructed verdict, 3 insufficient data.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eqdelta::cli
