#pragma once

// Command-line entry point, callable in-process for tests. Exit codes:
// 0 success/true, 1 false/counterexample, 2 usage or I/O error, 3 cap
// exceeded.

#include <iosfwd>
#include <string>
#include <vector>

namespace qb::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qb::cli
