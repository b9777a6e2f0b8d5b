// runner.hpp — Command execution: sweeps, CSV/JSON export, atomic writes.

#pragma once

#include <string>

#include "fresco/config.hpp"

namespace fresco::cli {

// Exit codes: 0 success, 1 config error, 2 numerical failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitNumerical = 2;

int run(const RunConfig& config);

// Atomically replace `path` with `content` (temp file + rename).
void write_file_atomic(const std::string& path, const std::string& content);

// 12 significant digits, deterministic.
std::string format_value(double v);

}  // namespace fresco::cli
