#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tamecount::cli {

// Runs one command. args[0] is the program name. Returns the exit status:
// 0 success, 1 invalid input, 2 failed internal check, 3 resource bound.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tamecount::cli
