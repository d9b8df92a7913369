#include "ptssh/bulk.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ptssh/errors.hpp"

namespace ptssh {

namespace {
constexpr double kWindingTolerance = 1e-6;
constexpr int kMinWindingPoints = 64;
}  // namespace

std::string_view to_string(PTPhase::Tag tag) {
  switch (tag) {
    case PTPhase::Tag::unbroken:
      return "Unbroken";
    case PTPhase::Tag::partially_broken:
      return "PartiallyBroken";
    case PTPhase::Tag::fully_broken:
      return "FullyBroken";
  }
  return "Unknown";
}

BandPoint dispersion(double k, double v, double w, double gamma) {
  const double radicand = v * v + w * w + 2.0 * v * w * std::cos(k) - gamma * gamma;
  // +0 imaginary part selects the branch with Im >= 0 for negative radicands.
  const cplx e = std::sqrt(cplx(radicand, 0.0));
  return {k, e, -e};
}

double band_gap(double v, double w) { return 2.0 * std::abs(v - w); }

WindingResult winding_number(double v, double w, int nk) {
  if (!(v > 0.0) || !(w > 0.0)) throw DomainError("winding_number: hoppings must be positive");
  if (v == w) throw DomainError("winding_number: gap closed (v = w), winding undefined");
  if (nk < kMinWindingPoints) {
    throw DomainError("winding_number: need at least " + std::to_string(kMinWindingPoints) +
                      " k-points, got " + std::to_string(nk));
  }

  const double dk = 2.0 * std::numbers::pi / nk;
  double sum = 0.0;
  for (int j = 0; j < nk; ++j) {
    const double k = -std::numbers::pi + j * dk;
    const cplx phase = std::exp(cplx(0.0, -k));
    const cplx h = v + w * phase;
    const cplx dh = cplx(0.0, -w) * phase;
    sum += (dh / h).imag();
  }
  const double raw = -sum * dk / (2.0 * std::numbers::pi);

  WindingResult result;
  result.raw = raw;
  result.value = static_cast<int>(std::lround(raw));
  result.quadrature_residual = std::abs(raw - result.value);
  if (result.quadrature_residual > kWindingTolerance) {
    throw QuadratureError("winding_number: quadrature residual " +
                          std::to_string(result.quadrature_residual) + " with nk = " +
                          std::to_string(nk) + "; refine the k-grid");
  }
  return result;
}

PTPhase pt_phase(double v, double w, double gamma) {
  const double lower = std::abs(v - w);
  const double upper = v + w;
  using Tag = PTPhase::Tag;
  if (gamma < lower) return {Tag::unbroken, false};
  if (gamma == lower) return {Tag::partially_broken, true};
  if (gamma < upper) return {Tag::partially_broken, false};
  if (gamma == upper) return {Tag::fully_broken, true};
  return {Tag::fully_broken, false};
}

}  // namespace ptssh
