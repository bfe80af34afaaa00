#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "lagidx/hermitian.hpp"

namespace lagidx {

/// Process exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitValidation = 2,
  kExitDisagreement = 3,
  kExitDegenerate = 4,
};

/// Name of the environment variable selecting the default tolerance profile.
inline constexpr const char* kToleranceEnv = "LAGIDX_TOLERANCE";

/// Profiles "default" (1e-9, 1e-8), "strict" (1e-11, 1e-10) and
/// "loose" (1e-7, 1e-6). Throws InvalidArgument for other names.
TolerancePolicy tolerance_profile(std::string_view name);

/// Runs the CLI on `args` (without the program name). `env_profile` stands in
/// for the tolerance environment variable so tests need not touch the
/// process environment.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            std::optional<std::string> env_profile = std::nullopt);

}  // namespace lagidx
