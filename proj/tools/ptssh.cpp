/// ptssh: spectra, exceptional points and edge-state profiles of PT-symmetric
/// SSH chains, written as reproducible CSV.

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "ptssh/commands.hpp"
#include "ptssh/config.hpp"
#include "ptssh/csv.hpp"
#include "ptssh/errors.hpp"

namespace {

constexpr int kExitRowFailure = 1;
constexpr int kExitConfigError = 2;

struct Invocation {
  std::string config_path;
  std::string out;
  std::string svg;
  std::optional<std::uint64_t> seed;
  int threads = 1;
  std::map<std::string, std::string> overrides;
};

void add_common(CLI::App& sub, Invocation& inv) {
  sub.add_option("--config", inv.config_path, "key = value configuration file");
  sub.add_option("--out", inv.out, "output CSV path (stdout if omitted)");
  sub.add_option("--seed", inv.seed, "seed for random gain profiles");
  sub.add_option("--threads", inv.threads, "worker threads (speed only)")->check(CLI::PositiveNumber);
  sub.add_option("--svg", inv.svg, "also write a quick-look SVG figure");
  for (std::string_view key : ptssh::config_keys()) {
    if (key == "command" || key == "seed" || key == "output") continue;
    const std::string name(key);
    sub.add_option_function<std::string>(
        "--" + name, [&inv, name](const std::string& value) { inv.overrides[name] = value; },
        "override config key '" + name + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral laboratory for PT-symmetric SSH chains"};
  app.set_version_flag("--version", std::string(ptssh::tool_version()));
  app.require_subcommand(1);

  Invocation inv;
  std::map<CLI::App*, ptssh::Command> commands;
  const std::map<ptssh::Command, std::string> help = {
      {ptssh::Command::spectrum_sweep, "complex spectrum vs gain/loss amplitude"},
      {ptssh::Command::ep_find, "locate the edge-state exceptional point of one chain"},
      {ptssh::Command::ep_sweep, "exceptional points over (M, u) grids"},
      {ptssh::Command::bulk_phase, "bulk PT phase, winding number and gap over (u, gamma)"},
      {ptssh::Command::ansatz_profile, "analytic edge-state amplitudes"},
      {ptssh::Command::wavefunction_compare, "exact vs two-state edge eigenvector"},
  };
  for (std::string_view name : ptssh::command_names()) {
    const ptssh::Command cmd = ptssh::parse_command(name);
    CLI::App* sub = app.add_subcommand(std::string(name), help.at(cmd));
    add_common(*sub, inv);
    commands[sub] = cmd;
  }

  CLI11_PARSE(app, argc, argv);

  ptssh::ExperimentConfig config;
  try {
    for (auto& [sub, cmd] : commands) {
      if (sub->parsed()) config.command = cmd;
    }
    const ptssh::Command chosen = config.command;
    if (!inv.config_path.empty()) config = ptssh::parse_config_file(inv.config_path, config);
    // the subcommand on the command line wins over a config-file `command`
    config.command = chosen;
    for (const auto& [key, value] : inv.overrides) ptssh::apply_setting(config, key, value);
    if (inv.seed) config.seed = *inv.seed;
    if (!inv.out.empty()) config.output = inv.out;

    ptssh::RunOptions options;
    options.threads = inv.threads;
    options.render_svg = !inv.svg.empty();
    const ptssh::CommandResult result = ptssh::run_command(config, options);

    if (config.output.empty()) {
      std::cout << result.csv;
    } else {
      ptssh::csv::write_atomic(config.output, result.csv);
    }
    if (options.render_svg) ptssh::csv::write_atomic(inv.svg, result.svg);
    if (!result.ok()) {
      std::cerr << ptssh::error_summary(config, result) << '\n';
      return kExitRowFailure;
    }
    return EXIT_SUCCESS;
  } catch (const ptssh::Error& e) {
    ptssh::CommandResult failed;
    failed.errors.push_back(e.what());
    std::cerr << ptssh::error_summary(config, failed) << '\n';
    return kExitConfigError;
  }
}
