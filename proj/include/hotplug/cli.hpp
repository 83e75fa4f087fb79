#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hotplug::cli {

// Entry point of the `hotplug` tool. Returns the process exit code:
// 0 pass, 1 usage or parameter error, 2 decode failure, 3 privacy failure,
// 4 accounting mismatch or exceeded gap bound.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace hotplug::cli
