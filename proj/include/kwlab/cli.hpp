#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kwlab::cli {

/// Exit codes: 0 all checks within tolerance, 1 check failure, 2 usage or
/// input error. The JSON report goes to `out`; diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kwlab::cli
