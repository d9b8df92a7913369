#pragma once

/// Numerical location of the edge-state exceptional point of the full chain.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ptssh/edge.hpp"
#include "ptssh/eig.hpp"
#include "ptssh/model.hpp"

namespace ptssh {

/// The two exact eigenpairs that live in span{|L>, |R>}.
struct EdgePair {
  std::array<std::size_t, 2> indices{};  ///< ascending
  std::array<double, 2> projections{};   ///< ||P_edge x_i||_2, same order
};

inline constexpr double kEdgeProjectionThreshold = 0.8;

/// Picks the two eigenvectors with the largest projection onto the ansatz
/// subspace. Throws HybridizationError if either falls below 0.8.
EdgePair identify_edge_pair(const Spectrum& s, const EdgeAnsatz& ansatz);

/// A chain family parametrized by one gain/loss amplitude lambda: gamma for
/// the uniform profile, U for the other families.
struct EPProblem {
  int sites = 0;
  double u = 0.0;
  double w = 1.0;
  ProfileKind kind = ProfileKind::uniform;
  std::optional<std::uint64_t> seed;  ///< random kind only
  std::optional<GainProfile> shape;   ///< custom kind only, scaled by lambda

  double v() const { return w / u; }
  GainProfile unit_profile() const;
  GainProfile profile(double lambda) const;
  LatticeSpec at(double lambda) const;
};

struct EdgeState {
  Spectrum spectrum;
  EdgePair pair;
  double max_imag = 0.0;  ///< max |Im E| over the edge pair
};

/// Diagonalizes the chain at lambda and extracts the edge pair.
EdgeState edge_state(const EPProblem& problem, double lambda, const EdgeAnsatz& ansatz);

struct EPOptions {
  double tol = 1e-6;             ///< relative bracket width at exit
  double imag_threshold = 1e-8;  ///< in units of w
  /// Explicit initial bracket; disables automatic expansion.
  std::optional<std::pair<double, double>> bracket;
};

struct EPResult {
  double numeric = 0.0;   ///< located critical lambda
  double analytic = 0.0;  ///< |C| (uniform) or |C| / gamma_bar(U = 1)
  double relative_error = 0.0;
  int iterations = 0;
  double bracket_width = 0.0;
  double gamma_bar_per_unit = 1.0;  ///< gamma_bar of the unit-amplitude profile

  double gamma_bar_numeric() const { return numeric * gamma_bar_per_unit; }
  double gamma_bar_analytic() const { return analytic * gamma_bar_per_unit; }
};

/// Bisects on "edge pair has max |Im E| > imag_threshold * w".
///
/// Default bracket is [1e-6 w, 0.9 |v - w| / max(unit profile)]. The lower end
/// shrinks by 10x while the indicator is already set there; the upper end grows
/// by 1.25x while it is not, up to (v + w) / max(unit profile). Small u and M
/// put the EP above 0.9 |v - w|, hence the upward expansion.
///
/// The threshold biases the result upward by about
/// imag_threshold^2 / (2 lambda_cr^2) relative, negligible for lambda_cr >> 1e-8.
EPResult find_ep(const EPProblem& problem, const EPOptions& options = {});

struct SweepRow {
  int sites = 0;
  double u = 0.0;
  ProfileKind kind = ProfileKind::uniform;
  std::optional<std::uint64_t> seed;
  std::optional<EPResult> result;
  std::string error;  ///< empty on success

  bool ok() const { return result.has_value(); }
};

/// One row per (M, u), M outer and u inner. Row failures are recorded, not
/// thrown. `threads` changes speed only.
std::vector<SweepRow> ep_sweep(std::span<const int> sites_list, std::span<const double> u_list,
                               ProfileKind kind, std::optional<std::uint64_t> seed = std::nullopt,
                               const EPOptions& options = {}, int threads = 1, double w = 1.0);

}  // namespace ptssh
