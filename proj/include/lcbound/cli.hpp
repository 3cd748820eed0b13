#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lcb::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitInputError = 2;

/// Environment variable naming a JSON file with sweep-config overrides.
inline constexpr const char* kConfigEnv = "LCBOUND_CONFIG";

/// Runs one command line (args excludes the program name).
/// Exit codes: 0 computed / all pass, 1 verification failure, 2 input error.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace lcb::cli
