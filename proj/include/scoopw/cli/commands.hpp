#pragma once

#include <iosfwd>

namespace scoopw {

enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 1,      // usage, parse or compile failure
  kExitViolation = 2,  // property violation or discrepancy
  kExitTruncated = 3,  // a limit was hit before the answer was known
};

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace scoopw
