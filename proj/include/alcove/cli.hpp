#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace alcove {

/// Environment variable naming the default KL cache directory.
inline constexpr const char* kCacheEnv = "ALCOVE_CACHE";

enum ExitCode { kExitPass = 0, kExitCounterexample = 1, kExitUsage = 2 };

/// Runs one command line (without the program name). Returns 0 on success or a
/// passing suite, 1 when a suite finds a counterexample, 2 on usage or regime errors.
int run_query(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace alcove
