#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace rgc {

/// Entry point of the `rgc` tool. Exit codes: 0 success, 1 usage or input
/// error, 2 resource budget exceeded.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rgc
