#ifndef JMETRIC_CLI_CLI_HPP_
#define JMETRIC_CLI_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace jmetric::cli {

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerdict = 1;   // a mathematical check failed
inline constexpr int kExitUsage = 2;     // bad flags, config or manifold name
inline constexpr int kExitInternal = 3;  // internal consistency failure

/// Runs one command line (without the program name). Reports go to `out`
/// unless --output is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jmetric::cli

#endif  // JMETRIC_CLI_CLI_HPP_
