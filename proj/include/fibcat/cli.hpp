#pragma once

#include <cstddef>
#include <exception>
#include <ostream>
#include <string>
#include <vector>

namespace fibcat {

// Exit statuses of the command line tool.
enum ExitCode : int {
  exit_ok = 0,
  exit_suite_failure = 1,
  exit_parse = 2,
  exit_validation = 3,
  exit_precondition = 4,
  exit_invariant = 5,
};

// Maps an exception to its failure class.
int exit_code_for(const std::exception& e);

// FIBCAT_ENUM_CAP when set to a positive integer, else the default cap.
std::size_t enumeration_cap();

// Runs one command; `args` excludes the program name. Reports go to `out`,
// error documents to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fibcat
