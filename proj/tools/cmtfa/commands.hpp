#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cmtfa::cli {

// Process exit codes. Every command terminates with one of these.
enum ExitCode : int {
  kOk = 0,
  kInternalError = 1,        // e.g. a reconstruction self-check failed
  kInvalidInput = 2,         // unparseable arguments or alpha outside its domain
  kVerificationFailed = 3,   // certify: report written, but it did not pass
};

/// Runs the command line `args` (without the program name). Normal output
/// goes to `out` unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cmtfa::cli
