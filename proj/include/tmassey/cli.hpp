#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tmassey::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kParse = 3,
  kDataInvariant = 4,
  kNumeric = 5,
  kIo = 6,
  kInternal = 1,
};

// Runs one command line (args[0] is the program name). Artifacts go to
// `out` unless --output names a file; diagnostics go to `err` as a single
// line. `in` backs the `-` input path.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace tmassey::cli
