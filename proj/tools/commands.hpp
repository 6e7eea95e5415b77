#pragma once

#include <iosfwd>

namespace pgonal::cli
{

enum ExitCode : int
{
  exit_ok = 0,
  exit_discrepancy = 1,
  exit_usage = 2,
  exit_budget = 3,
};

// Runs the command line; tables and maps go to out, notes and errors to err.
int run(int argc, char const *const *argv, std::ostream &out, std::ostream &err);

} // namespace pgonal::cli
