#include "ptssh/commands.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "ptssh/bulk.hpp"
#include "ptssh/csv.hpp"
#include "ptssh/edge.hpp"
#include "ptssh/eig.hpp"
#include "ptssh/ep.hpp"
#include "ptssh/errors.hpp"
#include "ptssh/parallel.hpp"
#include "ptssh/svg.hpp"

#ifndef PTSSH_VERSION
#define PTSSH_VERSION "0.0.0"
#endif

namespace ptssh {

namespace {

constexpr double kGapEpsilon = 1e-9;

std::vector<double> linspace(double lo, double hi, int points) {
  std::vector<double> xs;
  if (points <= 0) return xs;
  if (points == 1) return {lo};
  xs.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    xs.push_back(i == points - 1 ? hi : lo + (hi - lo) * i / (points - 1));
  }
  return xs;
}

csv::Writer start_csv(const ExperimentConfig& config) {
  csv::Writer out;
  out.comment("ptssh " + std::string(tool_version()));
  out.comment("energies and gain/loss amplitudes in units of w");
  std::istringstream lines(emit_config(config, /*include_output=*/false));
  for (std::string line; std::getline(lines, line);) out.comment(line);
  return out;
}

EPProblem make_problem(const ExperimentConfig& c) {
  EPProblem p;
  p.sites = c.M;
  p.u = c.ratio();
  p.w = c.w;
  p.kind = c.profile;
  if (c.profile == ProfileKind::random) p.seed = c.seed;
  if (c.profile == ProfileKind::custom) p.shape = read_profile_file(c.profile_file, c.M);
  return p;
}

// Analytic critical amplitude in units of w.
double analytic_critical(const EPProblem& p) {
  if (p.kind == ProfileKind::uniform) return gamma_cr_analytic(p.sites, p.u, p.v()) / p.w;
  return amplitude_cr_analytic(p.unit_profile(), p.u, p.v()) / p.w;
}

std::string describe(double x) { return csv::format_number(x); }

// ---------------------------------------------------------------------------
// spectrum-sweep
// ---------------------------------------------------------------------------

CommandResult spectrum_sweep(const ExperimentConfig& c, const RunOptions& options) {
  const EPProblem problem = make_problem(c);
  std::vector<double> grid = linspace(c.gamma_min, c.gamma_max, c.gamma_points);
  if (c.refine_points > 0) {
    const double critical = analytic_critical(problem);
    for (double x : linspace(c.refine_lo * critical, c.refine_hi * critical, c.refine_points)) {
      grid.push_back(x);
    }
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<std::optional<Spectrum>> spectra(grid.size());
  std::vector<std::string> failure(grid.size());
  parallel_for(grid.size(), options.threads, [&](std::size_t i) {
    try {
      spectra[i] = eig_dense(build_hamiltonian(problem.at(grid[i] * c.w)));
    } catch (const std::exception& e) {
      failure[i] = "gamma = " + describe(grid[i]) + ": " + e.what();
    }
  });

  // Edge pair: identified by ansatz projection, then followed by continuity.
  std::optional<EdgeAnsatz> ansatz;
  if (problem.u > 1.0) ansatz = ansatz_states(problem.sites, problem.u);
  std::vector<std::optional<std::array<std::size_t, 2>>> edge(grid.size());
  for (std::size_t i = 0; ansatz && i < grid.size(); ++i) {
    if (!spectra[i]) continue;
    if (i > 0 && edge[i - 1] && spectra[i - 1]) {
      try {
        const std::array<Spectrum, 2> window{*spectra[i - 1], *spectra[i]};
        edge[i] = track_pair(window, *edge[i - 1]).back().indices;
        continue;
      } catch (const AmbiguityError&) {
      }
    }
    try {
      edge[i] = identify_edge_pair(*spectra[i], *ansatz).indices;
    } catch (const HybridizationError&) {
    }
  }

  CommandResult result;
  csv::Writer out = start_csv(c);
  out.header({"gamma", "index", "re_E", "im_E", "edge_flag"});
  svg::Series re_bulk{"Re E", {}, false};
  svg::Series re_edge{"Re E (edge)", {}, false};
  svg::Series im_bulk{"Im E", {}, false};
  svg::Series im_edge{"Im E (edge)", {}, false};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!spectra[i]) {
      result.errors.push_back(failure[i]);
      continue;
    }
    const Spectrum& s = *spectra[i];
    for (std::size_t j = 0; j < s.size(); ++j) {
      const bool flagged = edge[i] && ((*edge[i])[0] == j || (*edge[i])[1] == j);
      const cplx e = s.eigenvalues[j] / c.w;
      out.row().add(grid[i]).add(static_cast<long long>(j)).add(e.real()).add(e.imag())
          .add(static_cast<long long>(flagged));
      ++result.rows;
      (flagged ? re_edge : re_bulk).points.emplace_back(grid[i], e.real());
      (flagged ? im_edge : im_bulk).points.emplace_back(grid[i], e.imag());
    }
  }
  result.csv = out.str();
  if (options.render_svg) {
    result.svg = svg::render({{"Real part of the spectrum", "gamma / w", "Re E / w", false,
                               {re_bulk, re_edge}},
                              {"Imaginary part of the spectrum", "gamma / w", "Im E / w", false,
                               {im_bulk, im_edge}}});
  }
  return result;
}

// ---------------------------------------------------------------------------
// ep-find / ep-sweep
// ---------------------------------------------------------------------------

void write_ep_header(csv::Writer& out) {
  out.header({"M", "u", "profile", "seed", "gamma_cr_numeric", "gamma_cr_analytic",
              "relative_error", "U_cr_numeric", "U_cr_analytic", "status"});
}

void write_ep_row(csv::Writer& out, const SweepRow& row, double w) {
  out.row().add(static_cast<long long>(row.sites)).add(row.u).add(to_string(row.kind));
  if (row.seed) {
    out.add(std::to_string(*row.seed));
  } else {
    out.add_empty();
  }
  if (row.result) {
    const EPResult& r = *row.result;
    out.add(r.gamma_bar_numeric() / w).add(r.gamma_bar_analytic() / w).add(r.relative_error)
        .add(r.numeric / w).add(r.analytic / w).add("ok");
  } else {
    out.add_empty().add_empty().add_empty().add_empty().add_empty().add(row.error);
  }
}

EPOptions ep_options(const ExperimentConfig& c) {
  EPOptions o;
  o.tol = c.tol;
  o.imag_threshold = c.imag_threshold;
  return o;
}

CommandResult ep_find(const ExperimentConfig& c) {
  const EPProblem problem = make_problem(c);
  SweepRow row;
  row.sites = problem.sites;
  row.u = problem.u;
  row.kind = problem.kind;
  row.seed = problem.seed;
  try {
    row.result = find_ep(problem, ep_options(c));
  } catch (const Error& e) {
    row.error = e.what();
  }

  CommandResult result;
  csv::Writer out = start_csv(c);
  if (row.result) {
    out.comment("bisection_iterations = " + std::to_string(row.result->iterations));
    out.comment("bracket_width = " + describe(row.result->bracket_width / c.w));
  }
  write_ep_header(out);
  write_ep_row(out, row, c.w);
  result.rows = 1;
  if (!row.ok()) result.errors.push_back(row.error);
  result.csv = out.str();
  return result;
}

CommandResult ep_sweep_command(const ExperimentConfig& c, const RunOptions& options) {
  const std::optional<std::uint64_t> seed =
      c.profile == ProfileKind::random ? std::optional(c.seed) : std::nullopt;
  const std::vector<SweepRow> rows =
      ep_sweep(c.M_list, c.u_list, c.profile, seed, ep_options(c), options.threads, c.w);

  CommandResult result;
  csv::Writer out = start_csv(c);
  write_ep_header(out);
  std::map<double, svg::Series> numeric;
  std::map<double, svg::Series> analytic;
  for (const SweepRow& row : rows) {
    write_ep_row(out, row, c.w);
    ++result.rows;
    if (!row.ok()) {
      result.errors.push_back("M = " + std::to_string(row.sites) + ", u = " + describe(row.u) +
                              ": " + row.error);
      continue;
    }
    const std::string tag = "u=" + csv::format_shortest(row.u);
    auto& n = numeric[row.u];
    n.label = tag + " numeric";
    n.points.emplace_back(row.sites, row.result->gamma_bar_numeric() / c.w);
    auto& a = analytic[row.u];
    a.label = tag + " analytic";
    a.lines = true;
    a.points.emplace_back(row.sites, row.result->gamma_bar_analytic() / c.w);
  }
  result.csv = out.str();
  if (options.render_svg) {
    svg::Figure fig{"Critical gain-loss contrast", "M", "gamma_cr / w", true, {}};
    for (auto& [u, s] : analytic) fig.series.push_back(s);
    for (auto& [u, s] : numeric) fig.series.push_back(s);
    result.svg = svg::render({fig});
  }
  return result;
}

// ---------------------------------------------------------------------------
// bulk-phase
// ---------------------------------------------------------------------------

CommandResult bulk_phase(const ExperimentConfig& c, const RunOptions& options) {
  CommandResult result;
  csv::Writer out = start_csv(c);
  out.header({"u", "gamma", "phase", "winding", "gap"});
  const std::vector<double> gammas = linspace(c.gamma_min, c.gamma_max, c.gamma_points);
  std::map<std::string, svg::Series> by_phase;
  for (double u : c.u_list) {
    const double w = c.w;
    const double v = w / u;
    const double gap = band_gap(v, w);
    std::optional<int> winding;
    if (gap > kGapEpsilon * w) {
      try {
        winding = winding_number(v, w, c.Nk).value;
      } catch (const Error& e) {
        result.errors.push_back("u = " + describe(u) + ": " + e.what());
      }
    }
    for (double gamma : gammas) {
      const PTPhase phase = pt_phase(v, w, gamma * w);
      std::string tag(to_string(phase.tag));
      if (phase.boundary) tag += ":boundary";
      out.row().add(u).add(gamma).add(tag);
      if (winding) {
        out.add(static_cast<long long>(*winding));
      } else {
        out.add_empty();
      }
      out.add(gap / w);
      ++result.rows;
      auto& s = by_phase[std::string(to_string(phase.tag))];
      s.label = std::string(to_string(phase.tag));
      s.points.emplace_back(u, gamma);
    }
  }
  result.csv = out.str();
  if (options.render_svg) {
    svg::Figure fig{"Bulk PT phase", "u", "gamma / w", false, {}};
    for (auto& [tag, s] : by_phase) fig.series.push_back(s);
    result.svg = svg::render({fig});
  }
  return result;
}

// ---------------------------------------------------------------------------
// ansatz-profile / wavefunction-compare
// ---------------------------------------------------------------------------

CommandResult ansatz_profile(const ExperimentConfig& c, const RunOptions& options) {
  const EdgeAnsatz a = ansatz_states(c.M, c.ratio());
  CommandResult result;
  csv::Writer out = start_csv(c);
  out.comment("c_L = " + describe(a.normalization));
  out.comment("xi = " + describe(a.localization_length));
  out.comment("C / w = " + describe(a.coupling));
  out.header({"m", "cL", "cR", "abs_L", "abs_R"});
  svg::Series left{"|L>", {}, true};
  svg::Series right{"|R>", {}, true};
  for (std::size_t i = 0; i < a.left.size(); ++i) {
    out.row().add(static_cast<long long>(i + 1)).add(a.left[i]).add(a.right[i])
        .add(std::abs(a.left[i])).add(std::abs(a.right[i]));
    left.points.emplace_back(i + 1, std::abs(a.left[i]));
    right.points.emplace_back(i + 1, std::abs(a.right[i]));
    ++result.rows;
  }
  result.csv = out.str();
  if (options.render_svg) {
    result.svg = svg::render({{"Ansatz edge states", "m", "|c_m|", false, {left, right}}});
  }
  return result;
}

CommandResult wavefunction_compare(const ExperimentConfig& c, const RunOptions& options) {
  const EPProblem problem = make_problem(c);
  const double lambda = *c.gamma * c.w;
  const EdgeAnsatz ansatz = ansatz_states(problem.sites, problem.u);
  const double coupling = coupling_C(problem.sites, problem.u, problem.v());
  const EffectiveModel model = effective_model(gamma_bar(problem.profile(lambda), problem.u),
                                               coupling);
  if (model.at_ep) {
    throw ConfigError("gamma = " + describe(*c.gamma) +
                      " sits on the exceptional point of the two-state model; offset gamma");
  }
  const bool plus = c.state == "plus";
  const auto states = model.states();
  const ComplexVector predicted = compose_state(ansatz, (*states)[plus ? 0 : 1]);
  const cplx target = plus ? model.e_plus : model.e_minus;

  const EdgeState exact = edge_state(problem, lambda, ansatz);
  std::size_t pick = exact.pair.indices[0];
  for (std::size_t i : exact.pair.indices) {
    if (std::abs(exact.spectrum.eigenvalues[i] - target) <
        std::abs(exact.spectrum.eigenvalues[pick] - target)) {
      pick = i;
    }
  }
  const ComplexVector x = exact.spectrum.vector(pick);
  const double overlap = std::abs(x.dot(predicted));

  CommandResult result;
  csv::Writer out = start_csv(c);
  out.comment("gamma_bar / w = " + describe(model.gamma_bar / c.w));
  out.comment("C / w = " + describe(coupling / c.w));
  out.comment("E_effective / w = " + describe(target.real() / c.w) + " " +
              describe(target.imag() / c.w) + "i");
  const cplx e_exact = exact.spectrum.eigenvalues[pick] / c.w;
  out.comment("E_exact / w = " + describe(e_exact.real()) + " " + describe(e_exact.imag()) + "i");
  out.comment("overlap = " + describe(overlap));
  out.header({"m", "abs_exact", "abs_effective", "abs_L", "abs_R"});
  svg::Series exact_series{"exact", {}, false};
  svg::Series effective_series{"effective", {}, true};
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    out.row().add(static_cast<long long>(i + 1)).add(std::abs(x(i))).add(std::abs(predicted(i)))
        .add(std::abs(ansatz.left[k])).add(std::abs(ansatz.right[k]));
    exact_series.points.emplace_back(static_cast<double>(i + 1), std::abs(x(i)));
    effective_series.points.emplace_back(static_cast<double>(i + 1), std::abs(predicted(i)));
    ++result.rows;
  }
  result.csv = out.str();
  if (options.render_svg) {
    result.svg = svg::render({{std::string("Edge state Psi_") + (plus ? "+" : "-"), "m",
                               "|amplitude|", false, {effective_series, exact_series}}});
  }
  return result;
}

}  // namespace

std::string_view tool_version() { return PTSSH_VERSION; }

CommandResult run_command(const ExperimentConfig& config, const RunOptions& options) {
  validate(config);
  switch (config.command) {
    case Command::spectrum_sweep:
      return spectrum_sweep(config, options);
    case Command::ep_find:
      return ep_find(config);
    case Command::ep_sweep:
      return ep_sweep_command(config, options);
    case Command::bulk_phase:
      return bulk_phase(config, options);
    case Command::ansatz_profile:
      return ansatz_profile(config, options);
    case Command::wavefunction_compare:
      return wavefunction_compare(config, options);
  }
  throw ConfigError("unhandled command");
}

std::string error_summary(const ExperimentConfig& config, const CommandResult& result) {
  nlohmann::json j;
  j["status"] = result.ok() ? "ok" : "error";
  j["command"] = std::string(to_string(config.command));
  j["rows"] = result.rows;
  j["failed_rows"] = result.errors.size();
  j["errors"] = result.errors;
  return j.dump();
}

}  // namespace ptssh
