#pragma once

#include <string>
#include <vector>

namespace trigspline::cli {

// Entry point shared by the binary and the tests.  Returns the process
// exit code: 0 success, 1 validation failure, 2 config parse failure,
// 3 numeric failure.
int run(const std::vector<std::string>& args);

}  // namespace trigspline::cli
