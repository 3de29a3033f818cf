#pragma once

#include <iosfwd>

namespace ptorsion::cli {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kPrecisionEnv = "PTORSION_PRECISION";

// Exit codes: 0 success, 1 numeric or consistency failure, 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ptorsion::cli
