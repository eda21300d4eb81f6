#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace henon {

// Exit codes: 0 success/pass, 1 verifier fail, 2 usage error, 3 numeric or
// budget error. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace henon
