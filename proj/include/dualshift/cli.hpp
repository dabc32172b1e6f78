// In-process CLI entry point; tools/main.cpp is a thin wrapper around this so
// tests can drive every command without spawning processes.
//
// Exit codes: 0 success, 1 precondition/planner failure, 2 parse or type
// error (including usage errors), 3 internal invariant breach.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dualshift {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dualshift
