#include <doctest.h>

#include <numbers>

#include "oracles.hpp"
#include "ptssh/edge.hpp"
#include "ptssh/eig.hpp"
#include "ptssh/errors.hpp"
#include "ptssh/model.hpp"

using namespace ptssh;

TEST_CASE("ansatz amplitudes, M = 8, u = 2") {
  const EdgeAnsatz a = ansatz_states(8, 2.0);
  CHECK(a.normalization == doctest::Approx(0.867721831274624688).epsilon(1e-15));
  const double odd[] = {0.867721831274624688, -0.433860915637312344, 0.216930457818656172,
                        -0.108465228909328086};
  for (std::size_t n = 0; n < 4; ++n) {
    CHECK(a.left[2 * n] == doctest::Approx(odd[n]).epsilon(1e-15));
    CHECK(a.left[2 * n + 1] == 0.0);
    // right state is the mirror image on the other sublattice
    CHECK(a.right[7 - 2 * n] == doctest::Approx(odd[n]).epsilon(1e-15));
    CHECK(a.right[6 - 2 * n] == 0.0);
  }
  CHECK(a.localization_length == doctest::Approx(2.0 / std::numbers::ln2).epsilon(1e-15));
  CHECK(a.coupling == doctest::Approx(-0.0470588235294117647).epsilon(1e-14));
}

TEST_CASE("ansatz invariants") {
  for (int sites : {4, 8, 30, 200}) {
    for (double u : {1.01, 1.2, 1.5, 2.0, 5.0}) {
      const EdgeAnsatz a = ansatz_states(sites, u);
      CHECK(std::abs(a.left_vector().norm() - 1.0) <= 1e-14);
      CHECK(std::abs(a.right_vector().norm() - 1.0) <= 1e-14);
      CHECK(std::abs(a.left_vector().dot(a.right_vector())) == 0.0);
      const std::vector<double> l = oracle::ansatz_left(sites, u);
      const std::vector<double> r = oracle::ansatz_right(sites, u);
      for (std::size_t i = 0; i < l.size(); ++i) {
        CHECK(std::abs(a.left[i] - l[i]) <= 1e-14);
        CHECK(std::abs(a.right[i] - r[i]) <= 1e-14);
      }
    }
  }
}

TEST_CASE("normalization tends to sqrt(1 - u^-2)") {
  CHECK(ansatz_states(400, 2.0).normalization ==
        doctest::Approx(0.866025403784438647).epsilon(1e-15));
  CHECK(ansatz_states(8, 2.0).normalization > ansatz_states(400, 2.0).normalization);
}

TEST_CASE("ansatz is undefined in the trivial phase") {
  for (double u : {1.0, 0.5, -2.0}) {
    CHECK_THROWS_WITH_AS(ansatz_states(8, u), doctest::Contains("trivial phase"), DomainError);
    CHECK_THROWS_AS(coupling_C(8, u, 1.0), DomainError);
    CHECK_THROWS_AS(ansatz_residual(8, u, 1.0), DomainError);
  }
  CHECK_THROWS_AS(ansatz_states(7, 2.0), DomainError);
  CHECK_THROWS_AS(coupling_C(8, 2.0, 0.0), DomainError);
}

TEST_CASE("coupling values and sign") {
  CHECK(coupling_C(8, 2.0, 1.0) == doctest::Approx(-0.0941176470588235294).epsilon(1e-14));
  CHECK(gamma_cr_analytic(8, 2.0, 0.5) == doctest::Approx(0.0470588235294117647).epsilon(1e-14));
  CHECK(gamma_cr_analytic(12, 1.5, 1.0 / 1.5) ==
        doctest::Approx(0.0491518834918317231).epsilon(1e-14));
  // sign (-1)^(M/2 - 1)
  for (int sites = 4; sites <= 40; sites += 2) {
    const double c = coupling_C(sites, 1.7, 0.3);
    CHECK((c > 0.0) == ((sites / 2 - 1) % 2 == 0));
  }
}

TEST_CASE("coupling equals <L|H|R> computed bond by bond") {
  for (int sites = 4; sites <= 200; sites += 14) {
    for (double u : {1.2, 1.5, 2.0, 5.0}) {
      const double v = 1.0 / u;
      const std::vector<double> zero(static_cast<std::size_t>(sites), 0.0);
      const oracle::cplx lhr = oracle::chain_matrix_element(
          oracle::ansatz_left(sites, u), oracle::ansatz_right(sites, u), v, 1.0, zero);
      const double c = coupling_C(sites, u, v);
      CHECK(std::abs(lhr - c) <= 1e-13);
      CHECK(std::abs(lhr - c) <= 1e-11 * std::abs(c));
    }
  }
}

TEST_CASE("asymptotic coupling") {
  const double ratio = std::abs(coupling_C(30, 1.5, 1.0 / 1.5)) / coupling_asymptotic(30, 1.5, 1.0 / 1.5);
  CHECK(ratio == doctest::Approx(1.0000052151).epsilon(1e-10));
  CHECK(coupling_asymptotic(8, 2.0, 0.5) == doctest::Approx(0.75 / 16).epsilon(1e-14));
}

TEST_CASE("gamma_bar") {
  SUBCASE("uniform profile gives gamma itself") {
    for (double u : {1.2, 2.0, 5.0}) {
      CHECK(gamma_bar(make_gain_profile(ProfileKind::uniform, 0.37, 16), u) ==
            doctest::Approx(0.37).epsilon(1e-14));
    }
  }
  SUBCASE("linear decreasing, M = 8, u = 2 is 14/17") {
    const GainProfile p = make_gain_profile(ProfileKind::linear_decreasing, 1.0, 8);
    CHECK(gamma_bar(p, 2.0) == doctest::Approx(14.0 / 17.0).epsilon(1e-15));
    CHECK(amplitude_cr_analytic(ProfileKind::linear_decreasing, 8, 2.0, 0.5) ==
          doctest::Approx(2.0 / 35.0).epsilon(1e-14));
  }
  SUBCASE("weighted sum equals the ansatz diagonal element") {
    for (int sites : {4, 12, 40, 200}) {
      for (double u : {1.2, 1.5, 2.0, 5.0}) {
        for (ProfileKind k : {ProfileKind::uniform, ProfileKind::linear_decreasing,
                              ProfileKind::linear_increasing, ProfileKind::random}) {
          const auto seed = k == ProfileKind::random ? std::optional<std::uint64_t>(99) : std::nullopt;
          const GainProfile p = make_gain_profile(k, 0.8, sites, seed);
          CHECK(std::abs(gamma_bar(p, u) - gamma_bar_from_ansatz(p, ansatz_states(sites, u))) <=
                1e-13);
        }
      }
    }
  }
  SUBCASE("decoupled profile") {
    CHECK_THROWS_WITH_AS(amplitude_cr_analytic(GainProfile::zero(8), 2.0, 0.5),
                         doctest::Contains("decoupled"), DomainError);
  }
}

TEST_CASE("effective model below and above the EP") {
  SUBCASE("below") {
    const EffectiveModel m = effective_model(0.6, 1.0);
    CHECK_FALSE(m.at_ep);
    CHECK(std::abs(m.e_plus - 0.8) <= 1e-15);
    CHECK(m.e_minus == -m.e_plus);
    REQUIRE(m.theta);
    CHECK(m.theta->real() == doctest::Approx(std::numbers::pi / 4).epsilon(1e-15));
    CHECK(m.theta->imag() == doctest::Approx(-std::log(4.0) / 4).epsilon(1e-14));
  }
  SUBCASE("above") {
    const EffectiveModel m = effective_model(2.0, 1.0);
    CHECK(std::abs(m.e_plus - cplx(0.0, std::sqrt(3.0))) <= 1e-15);
    REQUIRE(m.theta);
    CHECK(m.theta->real() == 0.0);
    CHECK(m.theta->imag() == doctest::Approx(-std::log(3.0) / 4).epsilon(1e-14));
  }
  SUBCASE("at the EP") {
    const EffectiveModel m = effective_model(0.3, -0.3);
    CHECK(m.at_ep);
    CHECK_FALSE(m.theta);
    CHECK_FALSE(m.states());
  }
}

TEST_CASE("effective eigenvectors diagonalize the 2x2 matrix") {
  for (double c : {1.0, -1.0, 0.05, -0.05}) {
    for (double g : {0.0, 0.01, 0.3, 0.99, 1.01, 3.0}) {
      const EffectiveModel m = effective_model(g, c);
      if (m.at_ep) continue;
      const auto states = m.states();
      REQUIRE(states);
      const Eigen::Matrix2cd h = m.matrix();
      const Eigen::Vector2cd& plus = (*states)[0];
      const Eigen::Vector2cd& minus = (*states)[1];
      const double scale = std::max(std::abs(c), g);
      CHECK((h * plus - m.e_plus * plus).norm() <= 1e-13 * scale);
      CHECK((h * minus - m.e_minus * minus).norm() <= 1e-13 * scale);

      Eigen::Matrix2cd vmat;
      vmat << plus, minus;
      Eigen::Matrix2cd d = Eigen::Matrix2cd::Zero();
      d(0, 0) = m.e_plus;
      d(1, 1) = m.e_minus;
      CHECK((vmat * d * vmat.inverse() - h).norm() <= 1e-12 * scale);

      // the closed-form eigenvalues agree with the dense solver
      const Spectrum s = eig_dense(h);
      for (const cplx& e : s.eigenvalues) {
        CHECK(std::min(std::abs(e - m.e_plus), std::abs(e - m.e_minus)) <= 1e-12 * scale);
      }
    }
  }
}

TEST_CASE("below the EP with C < 0 the plus state is (sin, -cos)") {
  const EffectiveModel m = effective_model(0.02, -0.0470588235294117647);
  const auto states = m.states();
  REQUIRE(states);
  const cplx s = std::sin(*m.theta);
  const cplx c = std::cos(*m.theta);
  Eigen::Vector2cd expected(s, -c);
  expected.normalize();
  CHECK(((*states)[0] - expected).norm() <= 1e-14);
}

TEST_CASE("ansatz residual") {
  CHECK(ansatz_residual(8, 2.0, 1.0) == doctest::Approx(0.108465228909328086).epsilon(1e-14));
  // only the last even site is left over: v c_L u^-(M/2 - 1)
  std::vector<double> ms;
  std::vector<double> logs;
  for (int sites = 8; sites <= 60; sites += 2) {
    const double r = ansatz_residual(sites, 1.5, 1.0);
    const std::vector<double> l = oracle::ansatz_left(sites, 1.5);
    CHECK(r == doctest::Approx(std::abs(l[static_cast<std::size_t>(sites - 2)])).epsilon(1e-13));
    ms.push_back(sites);
    logs.push_back(std::log(r));
  }
  // ln ||H|L>|| falls by ln(u)/2 per site, up to the slowly varying c_L
  const oracle::Line fit = oracle::fit_line(ms, logs);
  CHECK(fit.slope == doctest::Approx(-std::log(1.5) / 2).epsilon(1e-2));
}

TEST_CASE("compose_state") {
  const EdgeAnsatz a = ansatz_states(10, 1.5);
  const ComplexVector x = compose_state(a, Eigen::Vector2cd(1.0, 1.0));
  CHECK(std::abs(x.norm() - 1.0) <= 1e-15);
  CHECK(std::abs(x(0) - a.left[0] / std::sqrt(2.0)) <= 1e-15);
  CHECK(std::abs(x(9) - a.right[9] / std::sqrt(2.0)) <= 1e-15);
}
