#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rwc::cli {

/// Runs the command line `args` (without the program name). Results go to
/// `out` unless a subcommand writes files; errors are reported on `err` as a
/// single JSON line. Returns 0 on success, 1 on usage errors, 2 on runtime
/// failures.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Subcommand names in declaration order.
const std::vector<std::string>& subcommands();

}  // namespace rwc::cli
