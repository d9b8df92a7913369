#include "ptssh/edge.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ptssh/errors.hpp"

namespace ptssh {

namespace {

constexpr double kEpTolerance = 1e-12;

void require_topological(int sites, double u) {
  if (!(u > 1.0) || !std::isfinite(u)) {
    throw DomainError("edge ansatz undefined in trivial phase (u = " + std::to_string(u) +
                      " <= 1)");
  }
  if (sites < 4 || sites % 2 != 0) {
    throw DomainError("edge ansatz needs an even site count M >= 4, got " +
                      std::to_string(sites));
  }
}

double normalization(int sites, double u) {
  return std::sqrt((1.0 - 1.0 / (u * u)) / (1.0 - std::pow(u, -sites)));
}

ComplexVector to_complex(const std::vector<double>& amplitudes) {
  ComplexVector x(static_cast<Eigen::Index>(amplitudes.size()));
  for (std::size_t i = 0; i < amplitudes.size(); ++i) {
    x(static_cast<Eigen::Index>(i)) = amplitudes[i];
  }
  return x;
}

}  // namespace

ComplexVector EdgeAnsatz::left_vector() const { return to_complex(left); }
ComplexVector EdgeAnsatz::right_vector() const { return to_complex(right); }

EdgeAnsatz ansatz_states(int sites, double u) {
  require_topological(sites, u);
  EdgeAnsatz a;
  a.sites = sites;
  a.u = u;
  a.normalization = normalization(sites, u);
  a.localization_length = 2.0 / std::log(u);
  a.coupling = coupling_C(sites, u, 1.0 / u);

  const auto n = static_cast<std::size_t>(sites);
  a.left.assign(n, 0.0);
  a.right.assign(n, 0.0);
  // Built by the recurrences themselves so they hold exactly:
  //   c^L_{m+2} = -c^L_m / u (m odd),  c^R_m = -c^R_{m+2} / u (m even).
  a.left[0] = a.normalization;
  for (std::size_t i = 2; i < n; i += 2) a.left[i] = -a.left[i - 2] / u;
  a.right[n - 1] = a.normalization;
  for (std::size_t i = n - 1; i >= 3; i -= 2) a.right[i - 2] = -a.right[i] / u;
  return a;
}

double coupling_C(int sites, double u, double v) {
  require_topological(sites, u);
  if (!(v > 0.0)) throw DomainError("coupling_C: v must be positive");
  const int power = sites / 2 - 1;
  const double sign = power % 2 == 0 ? 1.0 : -1.0;
  return sign * v * (1.0 - 1.0 / (u * u)) / (1.0 - std::pow(u, -sites)) * std::pow(u, -power);
}

double coupling_asymptotic(int sites, double u, double v) {
  require_topological(sites, u);
  const double w = u * v;
  const double c0 = (w * w - v * v) / w;
  const double xi = 2.0 / std::log(u);
  return c0 * std::exp(-sites / xi);
}

double gamma_bar(const GainProfile& profile, double u) {
  require_topological(profile.sites(), u);
  profile.validate();
  const auto g = profile.magnitudes();
  const double decay = 1.0 / (u * u);
  double weight = 1.0;
  double numerator = 0.0;
  double denominator = 0.0;
  for (std::size_t i = 0; i < g.size(); i += 2) {
    numerator += g[i] * weight;
    denominator += weight;
    weight *= decay;
  }
  return numerator / denominator;
}

double gamma_bar_from_ansatz(const GainProfile& profile, const EdgeAnsatz& ansatz) {
  if (profile.sites() != ansatz.sites) {
    throw DomainError("gamma_bar_from_ansatz: profile and ansatz differ in length");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < ansatz.left.size(); ++i) {
    const double sign = i % 2 == 0 ? 1.0 : -1.0;
    sum += sign * profile[i] * ansatz.left[i] * ansatz.left[i];
  }
  return sum;
}

Eigen::Matrix2cd EffectiveModel::matrix() const {
  Eigen::Matrix2cd h;
  h << cplx(0.0, gamma_bar), coupling, coupling, cplx(0.0, -gamma_bar);
  return h;
}

std::optional<std::array<Eigen::Vector2cd, 2>> EffectiveModel::states() const {
  if (at_ep || !theta) return std::nullopt;
  const cplx c = std::cos(*theta);
  const cplx s = std::sin(*theta);
  Eigen::Vector2cd first(c, s);
  Eigen::Vector2cd second(s, -c);
  first.normalize();
  second.normalize();

  // Rayleigh quotient of `first` decides whether it is the e_plus state.
  const Eigen::Matrix2cd h = matrix();
  const cplx e_first = first.dot(h * first);
  if (std::abs(e_first - e_plus) <= std::abs(e_first - e_minus)) {
    return std::array<Eigen::Vector2cd, 2>{first, second};
  }
  return std::array<Eigen::Vector2cd, 2>{second, first};
}

EffectiveModel effective_model(double gamma_bar, double coupling) {
  EffectiveModel m;
  m.gamma_bar = gamma_bar;
  m.coupling = coupling;
  const double scale = std::max({std::abs(coupling), std::abs(gamma_bar), 1.0});
  m.at_ep = std::abs(std::abs(gamma_bar) - std::abs(coupling)) < kEpTolerance * scale;
  if (m.at_ep) {
    m.e_plus = 0.0;
    m.e_minus = 0.0;
    return m;
  }
  m.e_plus = std::sqrt(cplx(coupling * coupling - gamma_bar * gamma_bar, 0.0));
  m.e_minus = -m.e_plus;
  // Real ratio with a +0 imaginary part: a negative ratio (below the EP) takes
  // log = ln|r| + i pi, never -i pi.
  const double ratio = (gamma_bar + coupling) / (gamma_bar - coupling);
  m.theta = cplx(0.0, -0.25) * std::log(cplx(ratio, 0.0));
  return m;
}

double gamma_cr_analytic(int sites, double u, double v) {
  return std::abs(coupling_C(sites, u, v));
}

double amplitude_cr_analytic(const GainProfile& unit_profile, double u, double v) {
  const double critical = gamma_cr_analytic(unit_profile.sites(), u, v);
  const double per_unit = gamma_bar(unit_profile, u);
  if (per_unit == 0.0) {
    throw DomainError("edge states decoupled from potential: gamma_bar vanishes at U = 1");
  }
  return critical / per_unit;
}

double amplitude_cr_analytic(ProfileKind kind, int sites, double u, double v,
                             std::optional<std::uint64_t> seed) {
  require_topological(sites, u);
  return amplitude_cr_analytic(make_gain_profile(kind, 1.0, sites, seed), u, v);
}

double ansatz_residual(int sites, double u, double v) {
  const EdgeAnsatz a = ansatz_states(sites, u);
  const ComplexMatrix h = build_hamiltonian(LatticeSpec::hermitian(sites, v, u * v));
  return (h * a.left_vector()).norm();
}

ComplexVector compose_state(const EdgeAnsatz& ansatz, const Eigen::Vector2cd& coefficients) {
  ComplexVector x = coefficients(0) * ansatz.left_vector() + coefficients(1) * ansatz.right_vector();
  return x / x.norm();
}

}  // namespace ptssh
