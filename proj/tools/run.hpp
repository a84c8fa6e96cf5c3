#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace destab::cli {

// Exit codes: 0 success (either verdict), 1 verification failure,
// 2 input validation failure, 3 capacity exceeded.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace destab::cli
