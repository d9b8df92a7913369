#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ptssh/config.hpp"

namespace ptssh {

std::string_view tool_version();

struct RunOptions {
  int threads = 1;          ///< speed only; output never depends on it
  bool render_svg = false;  ///< also produce a quick-look SVG figure
};

struct CommandResult {
  std::string csv;
  std::string svg;                  ///< empty unless requested
  std::vector<std::string> errors;  ///< one entry per failed row
  std::size_t rows = 0;

  bool ok() const { return errors.empty(); }
};

/// Validates the configuration (ConfigError on failure) and runs the command.
/// Row-level failures are collected in `errors`; the CSV still contains every
/// row that succeeded.
CommandResult run_command(const ExperimentConfig& config, const RunOptions& options = {});

/// Machine-readable JSON error summary.
std::string error_summary(const ExperimentConfig& config, const CommandResult& result);

}  // namespace ptssh
