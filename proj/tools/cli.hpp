#ifndef NSDWT_TOOLS_CLI_HPP
#define NSDWT_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace nsdwt::cli {

enum ExitCode { ok = 0, verification_failed = 1, usage_error = 2, io_error = 3 };

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nsdwt::cli

#endif  // NSDWT_TOOLS_CLI_HPP
