#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lipframe::cli {

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Returns the process exit code: 0 pass, 1 usage or
/// configuration error, 2 bound violation, 3 inconclusive.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lipframe::cli
