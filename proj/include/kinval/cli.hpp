#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace kinval {

/// Exit codes: 0 all checks pass, 1 a check failed, 2 parse or validation
/// error, 3 quadrature did not converge.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace kinval
