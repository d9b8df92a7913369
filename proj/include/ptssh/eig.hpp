#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "ptssh/model.hpp"

namespace ptssh {

/// Eigenvalues and right eigenvectors of a dense complex matrix.
///
/// Pairs are sorted by (Re E, Im E) ascending. Each eigenvector column has unit
/// Euclidean norm and its largest-magnitude component is real and positive.
struct Spectrum {
  std::vector<cplx> eigenvalues;
  ComplexMatrix eigenvectors;  ///< column i belongs to eigenvalues[i]

  std::size_t size() const { return eigenvalues.size(); }
  auto vector(std::size_t i) const { return eigenvectors.col(static_cast<Eigen::Index>(i)); }
};

inline constexpr Eigen::Index kMaxDenseDimension = 4096;

/// Full eigendecomposition of a square matrix.
///
/// Exactly Hermitian input goes through the self-adjoint solver, so its
/// eigenvalues come back with zero imaginary part. Everything else uses the
/// complex Schur (Hessenberg + shifted QR) path. Throws SolverError on
/// non-convergence.
Spectrum eig_dense(const ComplexMatrix& h);

/// Largest ||H x_i - E_i x_i||_2 over all pairs.
double max_residual(const ComplexMatrix& h, const Spectrum& s);

/// Spectral norm ||H||_2.
double spectral_norm(const ComplexMatrix& h);

enum class SpectrumSymmetry { hermitian, pt };

/// hermitian: max_i |E_i + E_{M+1-i}| over the sorted list.
/// pt: max of the Hausdorff distances between the eigenvalue set and its images
/// under E -> conj(E) and E -> -conj(E).
double spectrum_symmetry_residual(std::span<const cplx> eigenvalues, SpectrumSymmetry mode);
double spectrum_symmetry_residual(const Spectrum& s, SpectrumSymmetry mode);

/// Two eigenpairs followed along a parameter grid.
struct TrackedPair {
  std::array<std::size_t, 2> indices{};
  std::array<cplx, 2> energies{};
};

/// Follows two eigenpairs through a sequence of spectra.
///
/// At each step the pair is the two candidates with the largest overlap with
/// span{x_0, x_1} of the previous step. When the second and third overlaps are
/// within 1e-6 it falls back to distance from the previous pair energies, and
/// if those are within 1e-9 an AmbiguityError is thrown: a bulk level crosses
/// the pair and the grid needs refinement there. Inside the pair, members are
/// matched by overlap, then by energy; through an exceptional point they are
/// interchangeable and the lower index goes to the first member.
std::vector<TrackedPair> track_pair(std::span<const Spectrum> spectra,
                                    std::array<std::size_t, 2> seed_indices);

}  // namespace ptssh
