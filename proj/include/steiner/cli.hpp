#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace steiner {

/// Command-line entry point, callable in-process. Exit codes: 0 success,
/// 1 precondition violation, 2 property/verification failure, 3 I/O or
/// format error (including unknown flags).
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace steiner
