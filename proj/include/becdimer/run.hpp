#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "becdimer/config.hpp"

namespace becdimer {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitNumericalFailure = 2;

struct RunResult {
  int exit_code = kExitSuccess;
  std::vector<std::filesystem::path> files;
};

/// Executes one command. Output files are named "<out>_<suffix>"; if the
/// command fails, files it already wrote are removed. Diagnostics go to `log`.
RunResult run(const RunConfig& cfg, std::ostream& log);

}  // namespace becdimer
