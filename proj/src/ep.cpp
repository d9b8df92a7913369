#include "ptssh/ep.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "ptssh/errors.hpp"
#include "ptssh/parallel.hpp"

namespace ptssh {

namespace {

constexpr double kLowerStart = 1e-6;
constexpr double kLowerFloor = 1e-15;
constexpr double kGapFraction = 0.9;
constexpr double kUpperGrowth = 1.25;
constexpr int kMaxIterations = 200;

}  // namespace

EdgePair identify_edge_pair(const Spectrum& s, const EdgeAnsatz& ansatz) {
  if (static_cast<int>(s.size()) != ansatz.sites) {
    throw Error("identify_edge_pair: spectrum and ansatz differ in dimension");
  }
  const ComplexVector left = ansatz.left_vector();
  const ComplexVector right = ansatz.right_vector();
  std::vector<double> projection(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto x = s.vector(i);
    projection[i] = std::hypot(std::abs(left.dot(x)), std::abs(right.dot(x)));
  }

  std::vector<std::size_t> order(s.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return projection[a] > projection[b]; });
  if (order.size() < 2 || projection[order[1]] < kEdgeProjectionThreshold) {
    std::ostringstream msg;
    msg << "edge states hybridized with bulk: second-largest edge projection "
        << (order.size() < 2 ? 0.0 : projection[order[1]]) << " < " << kEdgeProjectionThreshold;
    throw HybridizationError(msg.str());
  }

  EdgePair pair;
  pair.indices = {std::min(order[0], order[1]), std::max(order[0], order[1])};
  pair.projections = {projection[pair.indices[0]], projection[pair.indices[1]]};
  return pair;
}

GainProfile EPProblem::unit_profile() const { return profile(1.0); }

GainProfile EPProblem::profile(double lambda) const {
  if (kind == ProfileKind::custom) {
    if (!shape) throw ConstructionError("custom EP problem needs a profile shape");
    std::vector<double> scaled(shape->magnitudes().begin(), shape->magnitudes().end());
    for (double& g : scaled) g *= lambda;
    return GainProfile::custom(std::move(scaled));
  }
  return make_gain_profile(kind, lambda, sites, kind == ProfileKind::random ? seed : std::nullopt);
}

LatticeSpec EPProblem::at(double lambda) const {
  return LatticeSpec::from_ratio(sites, u, profile(lambda), w);
}

EdgeState edge_state(const EPProblem& problem, double lambda, const EdgeAnsatz& ansatz) {
  EdgeState state;
  state.spectrum = eig_dense(build_hamiltonian(problem.at(lambda)));
  state.pair = identify_edge_pair(state.spectrum, ansatz);
  for (std::size_t i : state.pair.indices) {
    state.max_imag = std::max(state.max_imag, std::abs(state.spectrum.eigenvalues[i].imag()));
  }
  return state;
}

EPResult find_ep(const EPProblem& problem, const EPOptions& options) {
  if (!(options.tol > 0.0)) throw Error("find_ep: tolerance must be positive");
  const EdgeAnsatz ansatz = ansatz_states(problem.sites, problem.u);
  const GainProfile unit = problem.unit_profile();
  const double peak = unit.max_magnitude();
  if (!(peak > 0.0)) throw DomainError("find_ep: unit profile is identically zero");

  const double v = problem.v();
  const double w = problem.w;
  const double threshold = options.imag_threshold * w;
  auto broken = [&](double lambda) {
    return edge_state(problem, lambda, ansatz).max_imag > threshold;
  };

  double lo = 0.0;
  double hi = 0.0;
  if (options.bracket) {
    std::tie(lo, hi) = *options.bracket;
    if (!(0.0 < lo && lo < hi)) throw BracketError("find_ep: bracket must satisfy 0 < lo < hi");
    if (broken(lo) || !broken(hi)) {
      throw BracketError("find_ep: indicator does not change sign on the given bracket; "
                         "widen it or scan more finely");
    }
  } else {
    lo = kLowerStart * w;
    while (broken(lo)) {
      lo /= 10.0;
      if (lo < kLowerFloor * w) {
        throw BracketError("find_ep: edge pair already broken at lambda = " +
                           std::to_string(lo * 10.0) + "; widen the initial scan");
      }
    }
    const double ceiling = (v + w) / peak;
    hi = kGapFraction * std::abs(v - w) / peak;
    while (!broken(hi)) {
      hi *= kUpperGrowth;
      if (hi > ceiling) {
        throw BracketError("find_ep: edge pair still unbroken at lambda = " +
                           std::to_string(hi / kUpperGrowth) + "; widen the initial scan");
      }
    }
    if (!(lo < hi)) throw BracketError("find_ep: empty bracket");
  }

  EPResult result;
  while (hi - lo > options.tol * 0.5 * (hi + lo)) {
    if (++result.iterations > kMaxIterations) throw BracketError("find_ep: bisection stalled");
    const double mid = 0.5 * (lo + hi);
    (broken(mid) ? hi : lo) = mid;
  }

  result.numeric = 0.5 * (lo + hi);
  result.bracket_width = hi - lo;
  if (problem.kind == ProfileKind::uniform) {
    result.analytic = gamma_cr_analytic(problem.sites, problem.u, v);
    result.gamma_bar_per_unit = 1.0;
  } else {
    result.analytic = amplitude_cr_analytic(unit, problem.u, v);
    result.gamma_bar_per_unit = gamma_bar(unit, problem.u);
  }
  result.relative_error = std::abs(result.numeric - result.analytic) / result.analytic;
  return result;
}

std::vector<SweepRow> ep_sweep(std::span<const int> sites_list, std::span<const double> u_list,
                               ProfileKind kind, std::optional<std::uint64_t> seed,
                               const EPOptions& options, int threads, double w) {
  std::vector<SweepRow> rows;
  rows.reserve(sites_list.size() * u_list.size());
  for (int sites : sites_list) {
    for (double u : u_list) {
      SweepRow row;
      row.sites = sites;
      row.u = u;
      row.kind = kind;
      if (kind == ProfileKind::random) row.seed = seed;
      rows.push_back(row);
    }
  }

  parallel_for(rows.size(), threads, [&](std::size_t i) {
    SweepRow& row = rows[i];
    try {
      EPProblem problem{row.sites, row.u, w, kind, row.seed, std::nullopt};
      row.result = find_ep(problem, options);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  });
  return rows;
}

}  // namespace ptssh
