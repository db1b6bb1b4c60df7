#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace rholab::cli {

/// Dispatches the rho-lab subcommands. Returns the process exit code:
/// 0 success, 1 operation error (the error kind is printed), 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out = std::cout,
        std::ostream& err = std::cerr);

}  // namespace rholab::cli
