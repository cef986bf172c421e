// Copyright 2026 the qk developers. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qk
{

// Runs one CLI invocation (arguments exclude the program name) against the
// given streams and returns the process exit code:
//   0  success / property holds
//   1  property fails (check-*, a negative composition report, or a
//      simulation in which some correct guild member did not compose)
//   2  input or validation error (machine-readable JSON object on `err`)
int runCommand(std::vector<std::string> const& args, std::ostream& out,
               std::ostream& err);

} // namespace qk
