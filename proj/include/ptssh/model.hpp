#pragma once

/// Finite SSH chains with alternating gain and loss.
///
/// Sites are labelled m = 1..M in comments; containers are 0-based. The
/// Hamiltonian has hoppings v on bonds (m, m+1) with m odd, w on bonds with m
/// even, and on-site terms i(-1)^(m-1) gamma_m. Gain/loss magnitudes gamma_m
/// are stored without the alternating sign.

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace ptssh {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

enum class ProfileKind { uniform, linear_decreasing, linear_increasing, random, custom };

std::string_view to_string(ProfileKind kind);
/// Accepts the canonical names plus the short aliases "a", "b", "c".
ProfileKind parse_profile_kind(std::string_view name);

/// Per-site gain/loss magnitudes obeying the mirror constraint gamma_m = gamma_{M-m+1}.
class GainProfile {
 public:
  /// All-zero profile (Hermitian chain).
  static GainProfile zero(int sites);
  /// User-supplied magnitudes; mirror symmetry checked to 1e-12.
  static GainProfile custom(std::vector<double> magnitudes);
  /// No invariant checks at all. Only for building deliberately broken test matrices.
  static GainProfile unchecked(std::vector<double> magnitudes);

  std::span<const double> magnitudes() const { return magnitudes_; }
  double operator[](std::size_t i) const { return magnitudes_[i]; }
  int sites() const { return static_cast<int>(magnitudes_.size()); }
  ProfileKind kind() const { return kind_; }
  double amplitude() const { return amplitude_; }
  std::optional<std::uint64_t> seed() const { return seed_; }
  double max_magnitude() const;

  /// Throws ConstructionError naming the violated invariant.
  void validate() const;

  bool operator==(const GainProfile&) const = default;

 private:
  friend GainProfile make_gain_profile(ProfileKind, double, int, std::optional<std::uint64_t>);
  GainProfile(std::vector<double> magnitudes, ProfileKind kind, double amplitude,
              std::optional<std::uint64_t> seed)
      : magnitudes_(std::move(magnitudes)), kind_(kind), amplitude_(amplitude), seed_(seed) {}

  std::vector<double> magnitudes_;
  ProfileKind kind_ = ProfileKind::custom;
  double amplitude_ = 0.0;
  std::optional<std::uint64_t> seed_;
};

/// Builds one of the generated profile families.
///
/// For m = 1..M/2:
///   uniform            U
///   linear_decreasing  U (M/2 - m) / (M/2 - 1)
///   linear_increasing  U (m - 1) / (M/2 - 1)
///   random             U r_m, r_m uniform on [0, 1)
/// and the right half is the mirror image of the left half.
///
/// The random family draws from std::mt19937_64 seeded with `seed`, taking
/// r_m = (next() >> 11) * 2^-53 for m = 1..M/2 in order. That stream is fully
/// specified by the standard, so profiles are identical across platforms.
/// A seed must be given for the random kind and only for it.
GainProfile make_gain_profile(ProfileKind kind, double amplitude, int sites,
                              std::optional<std::uint64_t> seed = std::nullopt);

/// Reads a custom profile: one non-negative real per line, '#' starts a comment.
GainProfile read_profile(std::istream& in, int sites);
GainProfile read_profile_file(const std::string& path, int sites);

/// Chain geometry, hoppings and gain/loss profile. Stored canonically as (v, w).
struct LatticeSpec {
  int sites = 0;
  double v = 0.0;
  double w = 1.0;
  GainProfile profile = GainProfile::zero(0);

  /// (w, u) parametrization, v = w / u.
  static LatticeSpec from_ratio(int sites, double u, GainProfile profile, double w = 1.0);
  static LatticeSpec hermitian(int sites, double v, double w);

  double ratio() const { return w / v; }
  int cells() const { return sites / 2; }

  /// Throws ConstructionError on odd or too small M, non-positive hoppings,
  /// profile length mismatch or a broken mirror constraint.
  void validate() const;

  bool operator==(const LatticeSpec&) const = default;
};

enum class Validation { enforce, skip_mirror_check };

ComplexMatrix build_hamiltonian(const LatticeSpec& spec, Validation mode = Validation::enforce);

struct SymmetryResiduals {
  double chiral = 0.0;                 ///< max |{Sigma_z, H}|
  double pt_commutator = 0.0;          ///< max |[PT, H]|
  double pseudo_anti_hermitian = 0.0;  ///< max |{Sigma_z T, H}|
};

/// Max-norm residuals of the three defining symmetries. The chiral residual is
/// a diagnostic only: it is nonzero whenever any gamma_m > 0.
SymmetryResiduals symmetry_residuals(const ComplexMatrix& h);

}  // namespace ptssh
