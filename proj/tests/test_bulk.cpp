#include <doctest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "ptssh/bulk.hpp"
#include "ptssh/errors.hpp"

using namespace ptssh;

TEST_CASE("dispersion examples") {
  const BandPoint p = dispersion(0.0, 0.5, 1.0);
  CHECK(p.e_plus.real() == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(p.e_plus.imag() == 0.0);
  CHECK(p.e_minus == -p.e_plus);

  const BandPoint q = dispersion(std::numbers::pi, 0.5, 1.0);
  CHECK(q.e_plus.real() == doctest::Approx(0.5).epsilon(1e-14));

  // gamma above the gap edge at k = pi: purely imaginary, upper half plane
  const BandPoint r = dispersion(std::numbers::pi, 0.5, 1.0, 0.8);
  CHECK(std::abs(r.e_plus.real()) <= 1e-15);
  CHECK(r.e_plus.imag() == doctest::Approx(std::sqrt(0.39)).epsilon(1e-13));
}

TEST_CASE("property: E^2 = v^2 + w^2 + 2vw cos k - gamma^2") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> pos(0.05, 3.0);
  std::uniform_real_distribution<double> k(-std::numbers::pi, std::numbers::pi);
  for (int i = 0; i < 500; ++i) {
    const double v = pos(rng), w = pos(rng), g = pos(rng), kk = k(rng);
    const BandPoint p = dispersion(kk, v, w, g);
    const double rhs = v * v + w * w + 2 * v * w * std::cos(kk) - g * g;
    CHECK(std::abs(p.e_plus * p.e_plus - rhs) <= 1e-12 * (v * v + w * w + g * g));
    CHECK(p.e_plus.real() >= 0.0);
    if (p.e_plus.real() == 0.0) CHECK(p.e_plus.imag() >= 0.0);
  }
}

TEST_CASE("band gap") {
  CHECK(band_gap(0.5, 1.0) == 1.0);
  CHECK(band_gap(1.0, 0.5) == 1.0);
  CHECK(band_gap(1.0, 1.0) == 0.0);
}

TEST_CASE("winding number examples") {
  const WindingResult a = winding_number(0.5, 1.0, 1024);
  CHECK(a.value == 1);
  CHECK(a.quadrature_residual <= 1e-12);
  const WindingResult b = winding_number(1.0, 0.5, 1024);
  CHECK(b.value == 0);
  CHECK(b.quadrature_residual <= 1e-12);

  // near-closed gap: u^-Nk must be small for the rule to resolve it
  const WindingResult c = winding_number(1.0 / 1.001, 1.0, 16384);
  CHECK(c.value == 1);
  CHECK(c.raw == doctest::Approx(1.0000000772813344).epsilon(1e-9));
  CHECK_THROWS_AS(winding_number(1.0 / 1.001, 1.0, 1024), QuadratureError);
}

TEST_CASE("winding quadrature equals the geometric-series value") {
  for (double u : {1.01, 1.1, 1.5, 3.0, 0.3, 0.9, 0.99}) {
    for (int nk : {64, 256, 1024}) {
      const double expected = oracle::winding_raw_geometric(u, nk);
      const int target = u > 1.0 ? 1 : 0;
      if (std::abs(expected - target) > 1e-6) {
        CHECK_THROWS_AS(winding_number(1.0 / u, 1.0, nk), QuadratureError);
        continue;
      }
      const WindingResult r = winding_number(1.0 / u, 1.0, nk);
      CHECK(r.value == target);
      CHECK(std::abs(r.raw - expected) <= 1e-12);
    }
  }
}

TEST_CASE("winding depends only on v/w") {
  for (double scale : {0.01, 1.0, 250.0}) {
    CHECK(winding_number(0.4 * scale, 1.0 * scale, 512).value == 1);
    CHECK(winding_number(2.0 * scale, 1.0 * scale, 512).value == 0);
    CHECK(winding_number(0.4 * scale, scale, 512).raw ==
          doctest::Approx(winding_number(0.4, 1.0, 512).raw).epsilon(1e-12));
  }
}

TEST_CASE("winding errors") {
  CHECK_THROWS_AS(winding_number(1.0, 1.0, 1024), DomainError);
  CHECK_THROWS_AS(winding_number(0.5, 1.0, 63), DomainError);
  CHECK_THROWS_AS(winding_number(0.0, 1.0, 1024), DomainError);
}

TEST_CASE("bulk PT phase") {
  using Tag = PTPhase::Tag;
  CHECK(pt_phase(0.5, 1.0, 0.3) == PTPhase{Tag::unbroken, false});
  CHECK(pt_phase(0.5, 1.0, 1.0) == PTPhase{Tag::partially_broken, false});
  CHECK(pt_phase(0.5, 1.0, 2.0) == PTPhase{Tag::fully_broken, false});
  CHECK(pt_phase(0.5, 1.0, 0.5) == PTPhase{Tag::partially_broken, true});
  CHECK(pt_phase(0.5, 1.0, 1.5) == PTPhase{Tag::fully_broken, true});
  CHECK(pt_phase(1.0, 1.0, 0.0) == PTPhase{Tag::partially_broken, true});
  CHECK(to_string(Tag::unbroken) == "Unbroken");
  CHECK(to_string(Tag::partially_broken) == "PartiallyBroken");
  CHECK(to_string(Tag::fully_broken) == "FullyBroken");
}

TEST_CASE("property: phase tag agrees with the sampled band") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> pos(0.05, 2.0);
  for (int i = 0; i < 200; ++i) {
    const double v = pos(rng), w = pos(rng), g = pos(rng);
    const PTPhase ph = pt_phase(v, w, g);
    if (ph.boundary) continue;
    int real_points = 0;
    const int nk = 401;
    for (int j = 0; j < nk; ++j) {
      const double k = -std::numbers::pi + 2 * std::numbers::pi * j / (nk - 1);
      if (dispersion(k, v, w, g).e_plus.imag() == 0.0) ++real_points;
    }
    switch (ph.tag) {
      case PTPhase::Tag::unbroken: CHECK(real_points == nk); break;
      case PTPhase::Tag::fully_broken: CHECK(real_points == 0); break;
      // the grid includes k = pi, where the band is lowest
      case PTPhase::Tag::partially_broken: CHECK(real_points < nk); break;
    }
  }
}
