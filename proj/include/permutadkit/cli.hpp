#ifndef PERMUTADKIT_CLI_HPP
#define PERMUTADKIT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace permutadkit {

/// Runs the command line given argv-style arguments (excluding the program
/// name). Exit codes: 0 success / verified, 1 negative mathematical verdict
/// or failed check, 2 usage or parse error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace permutadkit

#endif
