#include "ptssh/eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "ptssh/errors.hpp"

namespace ptssh {

namespace {

constexpr double kOverlapTie = 1e-6;
constexpr double kAmbiguity = 1e-9;

// Unit norm, largest-magnitude component real positive (first one on ties).
void fix_phase(ComplexMatrix& vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    auto col = vectors.col(c);
    const double norm = col.norm();
    if (norm > 0.0) col /= norm;
    Eigen::Index pivot = 0;
    double largest = -1.0;
    for (Eigen::Index r = 0; r < col.size(); ++r) {
      const double a = std::abs(col(r));
      if (a > largest) {
        largest = a;
        pivot = r;
      }
    }
    if (largest > 0.0) col *= std::conj(col(pivot)) / largest;
    col(pivot) = cplx(col(pivot).real(), 0.0);
  }
}

Spectrum sorted_spectrum(const Eigen::VectorXcd& values, ComplexMatrix vectors) {
  const auto n = static_cast<std::size_t>(values.size());
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const cplx ea = values(static_cast<Eigen::Index>(a));
    const cplx eb = values(static_cast<Eigen::Index>(b));
    if (ea.real() != eb.real()) return ea.real() < eb.real();
    if (ea.imag() != eb.imag()) return ea.imag() < eb.imag();
    return a < b;
  });

  Spectrum s;
  s.eigenvalues.resize(n);
  s.eigenvectors.resize(vectors.rows(), vectors.cols());
  for (std::size_t i = 0; i < n; ++i) {
    const auto src = static_cast<Eigen::Index>(order[i]);
    s.eigenvalues[i] = values(src);
    s.eigenvectors.col(static_cast<Eigen::Index>(i)) = vectors.col(src);
  }
  fix_phase(s.eigenvectors);
  return s;
}

bool exactly_hermitian(const ComplexMatrix& h) {
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    for (Eigen::Index j = i; j < h.cols(); ++j) {
      if (h(i, j) != std::conj(h(j, i))) return false;
    }
  }
  return true;
}

// Top three entries of a score vector (higher is better).
std::array<std::size_t, 3> top_three(const std::vector<double>& score) {
  std::vector<std::size_t> order(score.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto k = std::min<std::size_t>(3, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      return score[a] > score[b] || (score[a] == score[b] && a < b);
                    });
  std::array<std::size_t, 3> top{};
  for (std::size_t i = 0; i < k; ++i) top[i] = order[i];
  return top;
}

// The two candidates that continue the tracked pair as a set. Membership is
// the overlap with span{x_0, x_1} of the previous step; a tie at the pair
// boundary falls back to distance from the previous pair energies.
std::array<std::size_t, 2> continue_pair(const Spectrum& cur,
                                         const std::array<std::vector<double>, 2>& overlap,
                                         const std::array<cplx, 2>& previous, std::size_t step) {
  if (cur.size() == 2) return {0, 1};
  std::vector<double> membership(cur.size());
  for (std::size_t j = 0; j < cur.size(); ++j) {
    membership[j] = std::hypot(overlap[0][j], overlap[1][j]);
  }
  const auto top = top_three(membership);
  if (membership[top[1]] - membership[top[2]] >= kOverlapTie) return {top[0], top[1]};

  std::vector<double> closeness(cur.size());
  for (std::size_t j = 0; j < cur.size(); ++j) {
    closeness[j] = -std::min(std::abs(cur.eigenvalues[j] - previous[0]),
                             std::abs(cur.eigenvalues[j] - previous[1]));
  }
  const auto near = top_three(closeness);
  if (closeness[near[1]] - closeness[near[2]] < kAmbiguity) {
    throw AmbiguityError("track_pair: ambiguous continuation at grid step " +
                         std::to_string(step) + "; refine the parameter grid");
  }
  return {near[0], near[1]};
}

// Which member continues as which. Inside the pair a tie is not an error: at
// an exceptional point the two levels are interchangeable, and the lower
// index goes to the first member.
std::array<std::size_t, 2> assign_members(const Spectrum& cur, std::array<std::size_t, 2> pair,
                                          const std::array<std::vector<double>, 2>& overlap,
                                          const std::array<cplx, 2>& previous) {
  const auto [p, q] = std::minmax(pair[0], pair[1]);
  const double straight = overlap[0][p] + overlap[1][q];
  const double swapped = overlap[0][q] + overlap[1][p];
  if (std::abs(straight - swapped) >= kOverlapTie) {
    return straight > swapped ? std::array{p, q} : std::array{q, p};
  }
  const double d_straight = std::abs(cur.eigenvalues[p] - previous[0]) +
                            std::abs(cur.eigenvalues[q] - previous[1]);
  const double d_swapped = std::abs(cur.eigenvalues[q] - previous[0]) +
                           std::abs(cur.eigenvalues[p] - previous[1]);
  if (d_swapped + kAmbiguity < d_straight) return {q, p};
  return {p, q};
}

}  // namespace

Spectrum eig_dense(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) throw Error("eig_dense: matrix is not square");
  if (h.rows() > kMaxDenseDimension) {
    throw Error("eig_dense: dimension " + std::to_string(h.rows()) + " exceeds " +
                std::to_string(kMaxDenseDimension));
  }
  if (h.rows() == 0) return Spectrum{};

  if (exactly_hermitian(h)) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    if (solver.info() != Eigen::Success) {
      throw SolverError("eig_dense: self-adjoint solver did not converge (M = " +
                            std::to_string(h.rows()) + ")",
                        h.rows(), std::numeric_limits<double>::infinity());
    }
    return sorted_spectrum(solver.eigenvalues().cast<cplx>(), solver.eigenvectors());
  }

  Eigen::ComplexEigenSolver<ComplexMatrix> solver(h, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) {
    double residual = std::numeric_limits<double>::infinity();
    if (solver.eigenvectors().allFinite()) {
      residual = (h * solver.eigenvectors() -
                  solver.eigenvectors() * solver.eigenvalues().asDiagonal())
                     .colwise()
                     .norm()
                     .maxCoeff();
    }
    throw SolverError("eig_dense: QR iteration did not converge (M = " +
                          std::to_string(h.rows()) + ", residual " + std::to_string(residual) +
                          ")",
                      h.rows(), residual);
  }
  return sorted_spectrum(solver.eigenvalues(), solver.eigenvectors());
}

double max_residual(const ComplexMatrix& h, const Spectrum& s) {
  double worst = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const ComplexVector x = s.vector(i);
    worst = std::max(worst, (h * x - s.eigenvalues[i] * x).norm());
  }
  return worst;
}

double spectral_norm(const ComplexMatrix& h) {
  if (h.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(h);
  return svd.singularValues()(0);
}

double spectrum_symmetry_residual(std::span<const cplx> e, SpectrumSymmetry mode) {
  const std::size_t n = e.size();
  double worst = 0.0;
  if (mode == SpectrumSymmetry::hermitian) {
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(e[i] + e[n - 1 - i]));
    return worst;
  }

  // The set and its image have the same size, so the Hausdorff distance is the
  // larger of the two directed distances.
  auto directed = [&](auto image) {
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double nearest = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < n; ++j) nearest = std::min(nearest, std::abs(image(e[i]) - e[j]));
      d = std::max(d, nearest);
    }
    for (std::size_t j = 0; j < n; ++j) {
      double nearest = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < n; ++i) nearest = std::min(nearest, std::abs(image(e[i]) - e[j]));
      d = std::max(d, nearest);
    }
    return d;
  };
  worst = std::max(worst, directed([](cplx z) { return std::conj(z); }));
  worst = std::max(worst, directed([](cplx z) { return -std::conj(z); }));
  return worst;
}

double spectrum_symmetry_residual(const Spectrum& s, SpectrumSymmetry mode) {
  return spectrum_symmetry_residual(std::span<const cplx>(s.eigenvalues), mode);
}

std::vector<TrackedPair> track_pair(std::span<const Spectrum> spectra,
                                    std::array<std::size_t, 2> seed_indices) {
  std::vector<TrackedPair> path;
  if (spectra.empty()) return path;
  const Spectrum& first = spectra.front();
  if (seed_indices[0] == seed_indices[1] || seed_indices[0] >= first.size() ||
      seed_indices[1] >= first.size()) {
    throw Error("track_pair: seed indices must be distinct and within the spectrum");
  }
  path.reserve(spectra.size());
  path.push_back({seed_indices,
                  {first.eigenvalues[seed_indices[0]], first.eigenvalues[seed_indices[1]]}});

  for (std::size_t step = 1; step < spectra.size(); ++step) {
    const Spectrum& prev = spectra[step - 1];
    const Spectrum& cur = spectra[step];
    if (cur.size() != prev.size()) throw Error("track_pair: spectra differ in dimension");
    const TrackedPair& last = path.back();

    std::array<std::vector<double>, 2> overlap;
    for (std::size_t a = 0; a < 2; ++a) {
      const ComplexVector x = prev.vector(last.indices[a]);
      overlap[a].resize(cur.size());
      for (std::size_t j = 0; j < cur.size(); ++j) {
        overlap[a][j] = std::abs(cur.vector(j).dot(x));
      }
    }

    const std::array<std::size_t, 2> pick = assign_members(
        cur, continue_pair(cur, overlap, last.energies, step), overlap, last.energies);
    path.push_back({pick, {cur.eigenvalues[pick[0]], cur.eigenvalues[pick[1]]}});
  }
  return path;
}

}  // namespace ptssh
