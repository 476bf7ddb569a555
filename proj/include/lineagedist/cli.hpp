#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lineagedist {

// Full command-line surface; returns the process exit status
// (0 ok, 2 usage, 3 numerical failure).  args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace lineagedist
