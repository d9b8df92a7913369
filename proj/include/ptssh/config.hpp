#pragma once

/// Experiment configuration for the command-line front end.
///
/// Text form: flat `key = value` lines, '#' starts a comment. Keys are the
/// field names below. Lists are comma separated; M_list also accepts
/// `lo..hi` for every even M in the range.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ptssh/model.hpp"

namespace ptssh {

enum class Command {
  spectrum_sweep,
  ep_find,
  ep_sweep,
  bulk_phase,
  ansatz_profile,
  wavefunction_compare,
};

std::string_view to_string(Command c);
Command parse_command(std::string_view name);
std::span<const std::string_view> command_names();

struct ExperimentConfig {
  Command command = Command::spectrum_sweep;

  // model
  int M = 12;
  double w = 1.0;
  std::optional<double> u;
  std::optional<double> v;
  ProfileKind profile = ProfileKind::uniform;
  std::string profile_file;  ///< custom profile, one magnitude per line at unit amplitude
  std::uint64_t seed = 0;

  // gain/loss amplitude: single value or grid (gamma for uniform, U otherwise)
  std::optional<double> gamma;
  double gamma_min = 0.0;
  double gamma_max = 2.6;
  int gamma_points = 261;
  // extra points in [refine_lo, refine_hi] * analytic critical amplitude
  int refine_points = 0;
  double refine_lo = 0.9;
  double refine_hi = 1.1;

  // sweeps
  std::vector<int> M_list;
  std::vector<double> u_list;

  // numerics
  double tol = 1e-6;
  double imag_threshold = 1e-8;
  int Nk = 4096;

  std::string state = "plus";  ///< wavefunction-compare: plus | minus
  std::string output;

  /// u = w/v from whichever of (u, v) is set.
  double ratio() const;
  double intra() const { return w / ratio(); }

  bool operator==(const ExperimentConfig&) const = default;
};

std::span<const std::string_view> config_keys();

/// Throws ConfigError naming the key for unknown keys or malformed values.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);

/// Parses key = value text on top of `base`. Errors carry `source:line`.
ExperimentConfig parse_config(std::istream& in, std::string_view source = "<config>",
                              ExperimentConfig base = {});
ExperimentConfig parse_config_file(const std::string& path, ExperimentConfig base = {});

/// Canonical text form; parse_config(emit_config(c)) == c. `output` is left
/// out when include_output is false (CSV headers record the experiment, not
/// where it was written).
std::string emit_config(const ExperimentConfig& config, bool include_output = true);

/// Checks every precondition of the selected command before any computation.
void validate(const ExperimentConfig& config);

}  // namespace ptssh
