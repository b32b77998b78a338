// Command-line front end: check | decompose | verify | gen.
//
// Exit codes: 0 success, 1 property-negative (not semicausal, verification
// failed), 2 usage, I/O or schema error.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace semiloc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitUsage = 2;

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace semiloc::cli
