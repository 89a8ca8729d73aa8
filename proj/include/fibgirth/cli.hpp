#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "fibgirth/report.hpp"

namespace fibgirth {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the fibgirth tool. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Everything `verify` checks: construction identities for levels
/// 0..level, primed lengths, commutator shifts, the Magnus depth ladder, the
/// girth facts, and the nilpotent laws on the built-in catalog.
Report verify_suite(int level, std::size_t radius = 10, unsigned threads = 1);

}  // namespace fibgirth
