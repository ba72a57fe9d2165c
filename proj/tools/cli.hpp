#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace too::cli {

/// Process exit statuses of too-sign.
enum ExitCode : int {
  kOk = 0,         // success, or signature accepted
  kReject = 1,     // well-formed signature rejected
  kMalformed = 2,  // unreadable or malformed input, bad arguments
  kLocked = 3,     // another process holds the key lock
  kExhausted = 4,  // stateful key has no signing capacity left
};

/// Runs too-sign with `args` (without the program name), writing to the given streams.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace too::cli
