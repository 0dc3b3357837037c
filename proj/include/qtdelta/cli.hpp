#pragma once

// Command-line front end. `run` is the whole program minus process setup, so
// tests can drive it with in-memory streams.

#include <iosfwd>
#include <string>
#include <vector>

namespace qtdelta::cli {

enum ExitCode : int { kOk = 0, kViolation = 1, kInputError = 2 };

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

/// Names of all subcommands, in help order.
const std::vector<std::string>& subcommands();

}  // namespace qtdelta::cli
