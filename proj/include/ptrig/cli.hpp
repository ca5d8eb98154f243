#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace ptrig::cli {

/// Process exit codes; one per outcome class.
enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kDomain = 3,
  kConvergence = 4,
  kPartialTable = 5,
  kViolations = 6,
};

/// Runs one command line (without the program name). Normal output goes to
/// `out` unless --out redirects it; diagnostics go to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace ptrig::cli
