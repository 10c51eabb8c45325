#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dkq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (without the program name). Returns 0 on success,
/// 1 when a verification check fails, 2 on usage or parameter errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dkq::cli
