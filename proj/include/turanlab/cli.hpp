#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace turanlab {

enum ExitCode : int { kExitOk = 0, kExitFail = 1, kExitInput = 2 };

/// Runs the command line; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

/// Parses "inf", "infinity" or a positive number.
double parse_q(const std::string& s);

/// "%.17g", with inf and nan spelled out.
std::string csv_number(double x);

}  // namespace turanlab
