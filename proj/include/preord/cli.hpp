#pragma once

// Command dispatch for the `preord` tool, kept in the library for testing.

#include "preord/workspace.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace preord {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitVerification = 3;

struct CliOptions {
  std::uint64_t seed = 1;
  std::size_t samples = 50;
  std::size_t order_cap = kDefaultOrderCap;
  std::optional<std::string> workspace;
};

struct CliResult {
  int code = kExitOk;
  std::string out;
  std::string err;
};

const std::vector<std::string>& command_names();

/// Runs one command; never throws.
CliResult run_command(const std::string& command, const std::vector<std::string>& args,
                      const CliOptions& opts);

}  // namespace preord
