#ifndef GPTCOMPAT_CLI_HPP
#define GPTCOMPAT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace gptcompat::cli {

/// Exit codes: affirmative verdict, negative verdict (certificate printed),
/// usage / parse / dimension error.
enum ExitCode : int { Affirmative = 0, Negative = 1, UsageError = 2 };

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace gptcompat::cli

#endif
