#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pldiv {

// Full command-line surface. args excludes the program name.
// Returns the process exit status; diagnostics go to err, results to out or files.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pldiv
