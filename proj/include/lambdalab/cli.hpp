#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lambdalab/symuniv.hpp"

namespace lambdalab::cli {

enum ExitCode : int { kTrue = 0, kFalse = 1, kInputError = 2, kUnknown = 3 };

struct Config {
  long primes_upto = 50;
  int search_bound = 8;
  UniversalCap universal_cap;
  std::string output = "text";
};

/// Run one command line (args exclude the program name). Output goes to
/// `out`, diagnostics to `err`; the return value is the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lambdalab::cli
