#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fquake::cli {

/// Runs one command line; args excludes the program name. Writes the JSON
/// summary to out and a one-line diagnostic to err on failure. Returns the
/// process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fquake::cli
