#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace perop::cli {

// Exit codes:
//   0  success (a NotPeriodic verdict is an answer, not a failure)
//   1  internal contract violation
//   2  malformed input: command line, JSON, or schema
//   3  structurally unsupported combination (selector/family mismatch,
//      infinite orbit where an invariant window is required)
//   4  provably impossible request
//   5  oracle check failure
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace perop::cli
