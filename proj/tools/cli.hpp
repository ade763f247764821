#pragma once

#include <iosfwd>

namespace aoisched::cli {

enum ExitCode : int {
    kOk = 0,
    kInfeasible = 1,
    kUsage = 2,
    kBudget = 3,
};

/// Entry point of the aoisched tool. Normal output goes to `out`,
/// diagnostics to `err`.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace aoisched::cli
