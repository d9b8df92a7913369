#pragma once

/// Analytic edge states of the topological SSH chain (u = w/v > 1) and the
/// two-state Hamiltonians built on them.
///
///   |L> = c_L sum_{m odd}  (-u)^{-(m-1)/2} |m>
///   |R> = c_R sum_{m even} (-u)^{-(M-m)/2} |m>
///   c_L = c_R = sqrt((1 - u^-2) / (1 - u^-M))
///
/// Every function here throws DomainError for u <= 1: the ansatz only exists in
/// the nontrivial phase.

#include <array>
#include <optional>
#include <vector>

#include "ptssh/model.hpp"

namespace ptssh {

struct EdgeAnsatz {
  int sites = 0;
  double u = 0.0;
  std::vector<double> left;   ///< c^L_m, zero on even sites
  std::vector<double> right;  ///< c^R_m, zero on odd sites
  double normalization = 0.0; ///< c_L = c_R > 0
  double localization_length = 0.0;  ///< xi = 2 / ln u
  double coupling = 0.0;      ///< C in units of w (v = 1/u)

  ComplexVector left_vector() const;
  ComplexVector right_vector() const;
};

EdgeAnsatz ansatz_states(int sites, double u);

/// Signed edge-edge coupling C = v (1 - u^-2) / (1 - u^-M) (-u)^{-(M/2-1)}.
double coupling_C(int sites, double u, double v);

/// Large-M form |C| ~ C0 e^{-M/xi}, C0 = (w^2 - v^2) / w, w = u v.
double coupling_asymptotic(int sites, double u, double v);

/// Edge-weighted gain/loss rate
///   gamma_bar = sum_n gamma_{2n-1} u^{-2(n-1)} / sum_n u^{-2(n-1)},  n = 1..M/2.
double gamma_bar(const GainProfile& profile, double u);

/// Same quantity as the diagonal element sum_m (-1)^(m-1) gamma_m |c^L_m|^2.
double gamma_bar_from_ansatz(const GainProfile& profile, const EdgeAnsatz& ansatz);

/// Two-state model [[i gamma_bar, C], [C, -i gamma_bar]].
struct EffectiveModel {
  double gamma_bar = 0.0;
  double coupling = 0.0;
  cplx e_plus;   ///< principal sqrt(C^2 - gamma_bar^2)
  cplx e_minus;  ///< -e_plus
  /// theta = -(i/4) ln((gamma_bar + C) / (gamma_bar - C)), principal log.
  /// Re(theta) = pi/4 below the EP and 0 above it. Empty at the EP.
  std::optional<cplx> theta;
  bool at_ep = false;

  /// Unit-norm eigenvectors in the (|L>, |R>) basis. plus belongs to e_plus.
  /// One of them is (cos theta, sin theta), the other (sin theta, -cos theta);
  /// which is which depends on the sign of C below the EP.
  /// Empty at the EP, where the matrix is defective.
  std::optional<std::array<Eigen::Vector2cd, 2>> states() const;
  Eigen::Matrix2cd matrix() const;
};

EffectiveModel effective_model(double gamma_bar, double coupling);

/// gamma_cr = |C|.
double gamma_cr_analytic(int sites, double u, double v);

/// Critical amplitude U_cr = |C| / gamma_bar(profile at U = 1). Every generated
/// family is linear in U, so this is exact within the two-state model.
/// Throws DomainError when the profile does not reach the edge states.
double amplitude_cr_analytic(ProfileKind kind, int sites, double u, double v,
                             std::optional<std::uint64_t> seed = std::nullopt);
double amplitude_cr_analytic(const GainProfile& unit_profile, double u, double v);

/// ||H|L>||_2 for the Hermitian chain, by explicit matrix-vector product.
double ansatz_residual(int sites, double u, double v);

/// Ansatz state built from the effective-model coefficients a|L> + b|R>, unit norm.
ComplexVector compose_state(const EdgeAnsatz& ansatz, const Eigen::Vector2cd& coefficients);

}  // namespace ptssh
