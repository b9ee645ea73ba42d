#pragma once

#include "mlw/weight.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace mlw {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitPass = 0, kExitCheckFailed = 1, kExitUsage = 2, kExitInfinite = 3 };

/// power:a=<real>, grid:<path.csv>, gen:cr:eta=<real>:seed=<int>,
/// gen:logu:osc=<real>:seed=<int>, gen:expbmo:lambda=<real>:seed=<int>.
Weight parse_weight_spec(const std::string& spec, const DyadicGrid& grid);

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace mlw
