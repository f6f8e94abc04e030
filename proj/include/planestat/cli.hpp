#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace planestat {

// Runs the planestat command line. `out` receives the data stream (unless
// --out redirects it to a file), `err` receives usage/progress/diagnostic
// text. Returns the process exit code: 0 success, 1 usage error,
// 2 computation error (range/convergence), 3 selftest failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace planestat
