#pragma once

#include <ostream>

namespace appscope::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPartial = 1;
inline constexpr int kExitInvalid = 2;

/// Entry point of the `appscope` tool.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace appscope::cli
