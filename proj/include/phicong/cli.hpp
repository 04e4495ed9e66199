#pragma once

#include <iosfwd>

namespace phicong::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Name of the environment variable that anchors relative --output paths.
inline constexpr const char* kOutputDirEnv = "PHICONG_OUTPUT_DIR";

// Parses argv and dispatches. Returns 0 when every check passed, 1 when a verification
// failed, 2 on usage or configuration errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace phicong::cli
