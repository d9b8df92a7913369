#include <doctest.h>

#include "oracles.hpp"
#include "ptssh/edge.hpp"
#include "ptssh/ep.hpp"
#include "ptssh/errors.hpp"

using namespace ptssh;

namespace {

EPProblem uniform(int sites, double u) { return EPProblem{sites, u, 1.0, ProfileKind::uniform, {}, {}}; }

}  // namespace

TEST_CASE("edge pair of the hermitian chain is the middle pair") {
  for (int sites : {8, 12, 20}) {
    const EdgeAnsatz a = ansatz_states(sites, 1.5);
    const EdgeState st = edge_state(uniform(sites, 1.5), 0.0, a);
    CHECK(st.pair.indices[0] == static_cast<std::size_t>(sites / 2 - 1));
    CHECK(st.pair.indices[1] == static_cast<std::size_t>(sites / 2));
    CHECK(st.pair.projections[0] > 0.95);
    CHECK(st.pair.projections[1] > 0.95);
    CHECK(st.max_imag == 0.0);
  }
}

TEST_CASE("strong gain in the bulk hybridizes the edge states") {
  const EdgeAnsatz a = ansatz_states(8, 1.05);
  const EPProblem p{8, 1.05, 1.0, ProfileKind::linear_increasing, {}, {}};
  CHECK_NOTHROW(edge_state(p, 0.5, a));
  CHECK_THROWS_WITH_AS(edge_state(p, 3.0, a), doctest::Contains("hybridized"), HybridizationError);
  // uniform gain never mixes them in: H^2 = H_0^2 - gamma^2
  const EdgePair calm = edge_state(uniform(8, 1.05), 0.0, a).pair;
  const EdgePair hot = edge_state(uniform(8, 1.05), 10.0, a).pair;
  CHECK(hot.projections[0] == doctest::Approx(calm.projections[0]).epsilon(1e-12));
}

TEST_CASE("find_ep, uniform profile") {
  SUBCASE("M = 12, u = 1.5") {
    const EPResult r = find_ep(uniform(12, 1.5));
    CHECK(r.analytic == doctest::Approx(0.0491518834918317231).epsilon(1e-13));
    CHECK(r.numeric == doctest::Approx(0.049931).epsilon(1e-4));
    CHECK(r.relative_error < 0.02);
    CHECK(r.bracket_width <= 1e-6 * r.numeric);
    CHECK(r.iterations > 0);
    CHECK(r.gamma_bar_per_unit == 1.0);
  }
  SUBCASE("u = 2 is close to the two-state prediction") {
    for (int sites : {8, 12, 20}) CHECK(find_ep(uniform(sites, 2.0)).relative_error < 0.0075);
  }
  SUBCASE("u = 1.2, M = 8 needs the upward bracket expansion") {
    const EPResult r = find_ep(uniform(8, 1.2));
    CHECK(r.numeric > 0.9 * (1.0 - 1.0 / 1.2));
    CHECK(r.relative_error < 0.2);
  }
}

TEST_CASE("uniform EP sits at the smallest hermitian level") {
  // Uniform gain anticommutes past the hoppings, so H^2 = H_0^2 - gamma^2 and
  // the edge pair meets at gamma = smallest |E| of the hermitian chain.
  for (double u : {1.2, 1.5, 2.0}) {
    for (int sites : {8, 12, 16}) {
      std::vector<double> off;
      for (int i = 0; i + 1 < sites; ++i) off.push_back(i % 2 == 0 ? 1.0 / u : 1.0);
      const double level = oracle::continuant_roots(off, 1e-9, 0.5, 200000).front();
      CHECK(find_ep(uniform(sites, u)).numeric == doctest::Approx(level).epsilon(2e-6));
    }
  }
}

TEST_CASE("find_ep, linear decreasing profile, M = 8, u = 2") {
  EPProblem p{8, 2.0, 1.0, ProfileKind::linear_decreasing, {}, {}};
  const EPResult r = find_ep(p);
  CHECK(r.analytic == doctest::Approx(2.0 / 35.0).epsilon(1e-13));
  CHECK(r.gamma_bar_per_unit == doctest::Approx(14.0 / 17.0).epsilon(1e-14));
  CHECK(r.gamma_bar_analytic() == doctest::Approx(0.0470588235294117647).epsilon(1e-13));
  CHECK(r.gamma_bar_numeric() == doctest::Approx(r.numeric * 14.0 / 17.0).epsilon(1e-14));
}

TEST_CASE("find_ep with a custom profile shape") {
  const GainProfile shape = GainProfile::custom({1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1});
  EPProblem p{12, 1.5, 1.0, ProfileKind::custom, {}, shape};
  CHECK(find_ep(p).numeric == doctest::Approx(find_ep(uniform(12, 1.5)).numeric).epsilon(1e-12));
}

TEST_CASE("find_ep bracket errors") {
  EPOptions o;
  o.bracket = std::pair{0.06, 0.1};
  CHECK_THROWS_AS(find_ep(uniform(12, 1.5), o), BracketError);
  o.bracket = std::pair{0.01, 0.02};
  CHECK_THROWS_AS(find_ep(uniform(12, 1.5), o), BracketError);
  o.bracket = std::pair{0.1, 0.01};
  CHECK_THROWS_AS(find_ep(uniform(12, 1.5), o), BracketError);
  o.bracket = std::pair{0.01, 0.1};
  CHECK(find_ep(uniform(12, 1.5), o).numeric == doctest::Approx(0.049931).epsilon(1e-4));
  EPOptions bad;
  bad.tol = 0.0;
  CHECK_THROWS_AS(find_ep(uniform(12, 1.5), bad), Error);
  CHECK_THROWS_AS(find_ep(uniform(12, 0.8)), DomainError);
}

TEST_CASE("edge eigenvalues below and above the numeric EP") {
  const EPProblem p = uniform(12, 1.5);
  const EdgeAnsatz a = ansatz_states(12, 1.5);
  const double crit = find_ep(p).numeric;

  const EdgeState below = edge_state(p, 0.5 * crit, a);
  CHECK(below.max_imag <= 1e-10);
  const cplx e0 = below.spectrum.eigenvalues[below.pair.indices[0]];
  const cplx e1 = below.spectrum.eigenvalues[below.pair.indices[1]];
  CHECK(std::abs(e0 + e1) <= 1e-10);

  // square-root opening above the EP: Im E ~ sqrt(lambda - lambda_cr)
  const double im1 = edge_state(p, crit * (1 + 1e-3), a).max_imag;
  const double im4 = edge_state(p, crit * (1 + 4e-3), a).max_imag;
  CHECK(im4 / im1 == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("critical gamma falls with chain length") {
  double previous = 1e300;
  for (int sites = 8; sites <= 24; sites += 2) {
    const double crit = find_ep(uniform(sites, 1.5)).numeric;
    CHECK(crit < previous);
    previous = crit;
  }
}

TEST_CASE("effective eigenvectors reproduce the exact edge states") {
  const int sites = 12;
  const double u = 1.5;
  const EdgeAnsatz a = ansatz_states(sites, u);
  const EPProblem p = uniform(sites, u);
  const double gcr = gamma_cr_analytic(sites, u, 1.0 / u);
  for (double factor : {0.5, 2.0}) {
    const double g = factor * gcr;
    const EdgeState st = edge_state(p, g, a);
    const EffectiveModel m = effective_model(g, a.coupling);
    const auto states = m.states();
    REQUIRE(states);
    for (std::size_t which = 0; which < 2; ++which) {
      const cplx target = which == 0 ? m.e_plus : m.e_minus;
      std::size_t best = st.pair.indices[0];
      for (std::size_t i : st.pair.indices) {
        if (std::abs(st.spectrum.eigenvalues[i] - target) <
            std::abs(st.spectrum.eigenvalues[best] - target)) {
          best = i;
        }
      }
      const ComplexVector effective = compose_state(a, (*states)[which]);
      CHECK(std::abs(effective.dot(st.spectrum.vector(best))) >= 0.99);
    }
  }
}

TEST_CASE("ep_sweep") {
  const std::vector<int> sites{8, 10};
  const std::vector<double> us{1.5, 2.0};
  const auto rows = ep_sweep(sites, us, ProfileKind::uniform);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].sites == 8);
  CHECK(rows[0].u == 1.5);
  CHECK(rows[1].sites == 8);
  CHECK(rows[1].u == 2.0);
  CHECK(rows[2].sites == 10);
  for (const SweepRow& row : rows) {
    REQUIRE(row.ok());
    CHECK(row.result->numeric == find_ep(uniform(row.sites, row.u)).numeric);
    CHECK_FALSE(row.seed);
  }

  CHECK(ep_sweep({}, us, ProfileKind::uniform).empty());
  CHECK(ep_sweep(sites, {}, ProfileKind::uniform).empty());
}

TEST_CASE("ep_sweep records row failures and keeps going") {
  const std::vector<int> sites{8};
  const std::vector<double> us{0.5, 2.0};
  const auto rows = ep_sweep(sites, us, ProfileKind::uniform);
  REQUIRE(rows.size() == 2);
  CHECK_FALSE(rows[0].ok());
  CHECK(rows[0].error.find("trivial phase") != std::string::npos);
  CHECK(rows[1].ok());
}

TEST_CASE("ep_sweep output does not depend on the thread count") {
  const std::vector<int> sites{8, 10, 12, 14};
  const std::vector<double> us{1.5, 2.0, 3.0};
  const auto one = ep_sweep(sites, us, ProfileKind::random, 42, {}, 1);
  const auto four = ep_sweep(sites, us, ProfileKind::random, 42, {}, 4);
  REQUIRE(one.size() == four.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    REQUIRE(one[i].ok());
    REQUIRE(four[i].ok());
    CHECK(one[i].seed == std::optional<std::uint64_t>(42));
    CHECK(one[i].result->numeric == four[i].result->numeric);
    CHECK(one[i].result->iterations == four[i].result->iterations);
  }
}
