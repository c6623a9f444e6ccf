#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pppt::cli {

enum ExitCode : int {
  kSuccess = 0,  // also a Yes decision or an EQUAL verification
  kNo = 1,       // No decision or UNEQUAL verification
  kUsage = 2,
  kValidation = 3,
  kGuard = 4,  // enumeration guard, variable limit, unanswerable query
};

/// Runs one command. `args` excludes the program name. Reports go to `out`
/// as "key: value" lines followed by a single JSON line; diagnostics go to
/// `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pppt::cli
