#ifndef MTW_TOOLS_CLI_HPP
#define MTW_TOOLS_CLI_HPP

#include <ostream>

namespace mtw::cli {

/// Exit codes of run().
enum ExitCode : int { kOk = 0, kValidation = 1, kNumeric = 2 };

int run(int argc, const char* const* argv);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Runs the reduced-scale cross-checks; one "ok"/"FAIL" line each. Returns
/// the number of failures.
int selftest(std::ostream& out);

}  // namespace mtw::cli

#endif
