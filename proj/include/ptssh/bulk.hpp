#pragma once

#include <string_view>

#include "ptssh/model.hpp"

namespace ptssh {

/// Thermodynamic-limit bulk classification of the uniform PT chain.
struct PTPhase {
  enum class Tag { unbroken, partially_broken, fully_broken };
  Tag tag = Tag::unbroken;
  /// gamma sits exactly on |v - w| or v + w; tag is then the more broken side.
  bool boundary = false;

  bool operator==(const PTPhase&) const = default;
};

std::string_view to_string(PTPhase::Tag tag);

struct BandPoint {
  double k = 0.0;
  cplx e_plus;
  cplx e_minus;  ///< always -e_plus
};

/// E(k) = +-sqrt(v^2 + w^2 + 2 v w cos k - gamma^2), principal branch
/// (non-negative real part, non-negative imaginary part when purely imaginary).
BandPoint dispersion(double k, double v, double w, double gamma = 0.0);

/// E_g = 2 |v - w|.
double band_gap(double v, double w);

struct WindingResult {
  int value = 0;
  double quadrature_residual = 0.0;  ///< |raw - value|
  double raw = 0.0;
};

/// Winding number of h(k) = v + w e^{-ik} around the origin.
///
/// The loop integral of d arg h / dk is taken with the periodic trapezoidal
/// rule on nk points; d arg h / dk = Im(h'/h) is evaluated analytically so
/// no explicit unwrapping is needed. The contour is oriented like
/// z = e^{-ik} running counterclockwise, which gives W = 1 for w > v.
/// The rule converges like (min(u, 1/u))^nk, so a gap close to closing
/// needs a large nk; QuadratureError is thrown when |raw - W| > 1e-6.
WindingResult winding_number(double v, double w, int nk);

/// Bulk PT phase from gamma against |v - w| and v + w.
PTPhase pt_phase(double v, double w, double gamma);

}  // namespace ptssh
