// Single CLI entry point exposing every module as a subcommand with
// reproducible, machine-readable output.
//
// Grammar: kstar | constants | avg | moments | cdf | config-identity | ec
// Global flags: --format table|csv|json, --out PATH,
//               --truncation-prime P (default 10^7), --chunk C (default 65536).
// KSTARLAB_THREADS overrides the worker count; results are identical for any
// worker count at a fixed chunk size.
//
// Exit codes: 0 success, 2 usage error, 1 computation error.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kstarlab::cli {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kFormatVersion = "1";

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kstarlab::cli
