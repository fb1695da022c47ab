#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace unitrect {

// exit codes: 0 positive / success, 1 negative decision, 2 usage or input error
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace unitrect
