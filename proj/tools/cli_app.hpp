#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gcsa::cli {

/// Runs the gcsa command line. Exit codes for `analyze`: 0 well, 2 over,
/// 3 under, 4 over-and-under, 1 error or usage problem.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace gcsa::cli
