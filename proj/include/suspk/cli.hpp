#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace suspk {

// Runs one CLI command; `args` excludes the program name. All output — the
// report on success, a structured {"error": {...}} document on failure — goes
// to `out`. Returns the process exit code: 0 on success, 2 for malformed
// input or usage errors, 1 for any other domain error.
int run_cli(const std::vector<std::string>& args, std::ostream& out);

}  // namespace suspk
