#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace witt {

// Runs one `witt` subcommand; `args` excludes the program name.
// Returns 0 on success, 1 on a domain error, 2 on a parse or usage error.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace witt
