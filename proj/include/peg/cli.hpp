#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace peg {

// Runs one CLI command. Exit status 0 on success, 2 on validation/usage
// failure (diagnostics on err), 3 on budget exhaustion. All output is
// deterministic for fixed arguments and inputs.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace peg
