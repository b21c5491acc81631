#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hotelauction::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

// Entry point of the `hotelauction` tool. `args` excludes the program name.
// Subcommands: optimize-forward, export-lp, reverse-price, mine-rules,
// gen-synthetic, evaluate, serve. Failures print a JSON error document on `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hotelauction::cli
