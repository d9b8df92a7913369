#include "ptssh/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "ptssh/errors.hpp"

namespace ptssh {

namespace {

constexpr double kCustomMirrorTolerance = 1e-12;

void check_sites(int sites) {
  if (sites % 2 != 0) {
    throw ConstructionError("site count M must be even, got " + std::to_string(sites));
  }
  if (sites < 4) {
    throw ConstructionError("site count M must be >= 4 (at least two unit cells), got " +
                            std::to_string(sites));
  }
}

void check_mirror(std::span<const double> g, double tolerance) {
  const std::size_t n = g.size();
  for (std::size_t i = 0; i < n / 2; ++i) {
    if (std::abs(g[i] - g[n - 1 - i]) > tolerance) {
      std::ostringstream msg;
      msg << "gain profile violates the global PT constraint gamma_m = gamma_{M-m+1} at m = "
          << i + 1 << " (" << g[i] << " vs " << g[n - 1 - i] << ")";
      throw ConstructionError(msg.str());
    }
  }
}

// Site sign (-1)^(m-1) for 0-based index i.
constexpr double site_sign(Eigen::Index i) { return i % 2 == 0 ? 1.0 : -1.0; }

}  // namespace

std::string_view to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::uniform:
      return "uniform";
    case ProfileKind::linear_decreasing:
      return "linear-decreasing";
    case ProfileKind::linear_increasing:
      return "linear-increasing";
    case ProfileKind::random:
      return "random";
    case ProfileKind::custom:
      return "custom";
  }
  return "unknown";
}

ProfileKind parse_profile_kind(std::string_view name) {
  if (name == "uniform") return ProfileKind::uniform;
  if (name == "linear-decreasing" || name == "a") return ProfileKind::linear_decreasing;
  if (name == "linear-increasing" || name == "b") return ProfileKind::linear_increasing;
  if (name == "random" || name == "c") return ProfileKind::random;
  if (name == "custom") return ProfileKind::custom;
  throw ConstructionError("unknown gain profile kind '" + std::string(name) + "'");
}

GainProfile GainProfile::zero(int sites) {
  return GainProfile(std::vector<double>(static_cast<std::size_t>(std::max(sites, 0)), 0.0),
                     ProfileKind::uniform, 0.0, std::nullopt);
}

GainProfile GainProfile::custom(std::vector<double> magnitudes) {
  double peak = 0.0;
  for (double g : magnitudes) peak = std::max(peak, g);
  GainProfile p(std::move(magnitudes), ProfileKind::custom, peak, std::nullopt);
  p.validate();
  return p;
}

GainProfile GainProfile::unchecked(std::vector<double> magnitudes) {
  return GainProfile(std::move(magnitudes), ProfileKind::custom, 0.0, std::nullopt);
}

double GainProfile::max_magnitude() const {
  double peak = 0.0;
  for (double g : magnitudes_) peak = std::max(peak, g);
  return peak;
}

void GainProfile::validate() const {
  for (std::size_t i = 0; i < magnitudes_.size(); ++i) {
    if (!std::isfinite(magnitudes_[i]) || magnitudes_[i] < 0.0) {
      throw ConstructionError("gain magnitude gamma_" + std::to_string(i + 1) +
                              " must be finite and non-negative");
    }
  }
  // Generated halves are mirrored by copy, so they must match bit for bit.
  check_mirror(magnitudes_, kind_ == ProfileKind::custom ? kCustomMirrorTolerance : 0.0);
}

GainProfile make_gain_profile(ProfileKind kind, double amplitude, int sites,
                              std::optional<std::uint64_t> seed) {
  check_sites(sites);
  if (!std::isfinite(amplitude) || amplitude < 0.0) {
    throw ConstructionError("profile amplitude U must be finite and non-negative");
  }
  if (kind == ProfileKind::custom) {
    throw ConstructionError("custom profiles are read from data, not generated");
  }
  if (kind == ProfileKind::random && !seed) {
    throw ConstructionError("random gain profile requires a seed");
  }
  if (kind != ProfileKind::random && seed) {
    throw ConstructionError("seed given for non-random gain profile '" +
                            std::string(to_string(kind)) + "'");
  }

  const int half = sites / 2;
  const double denom = half - 1;
  std::vector<double> g(static_cast<std::size_t>(sites));
  std::mt19937_64 engine(seed.value_or(0));
  for (int m = 1; m <= half; ++m) {
    double value = 0.0;
    switch (kind) {
      case ProfileKind::uniform:
        value = amplitude;
        break;
      case ProfileKind::linear_decreasing:
        value = amplitude * (half - m) / denom;
        break;
      case ProfileKind::linear_increasing:
        value = amplitude * (m - 1) / denom;
        break;
      case ProfileKind::random: {
        const double r = static_cast<double>(engine() >> 11) * 0x1.0p-53;
        value = amplitude * r;
        break;
      }
      case ProfileKind::custom:
        break;
    }
    g[static_cast<std::size_t>(m - 1)] = value;
    g[static_cast<std::size_t>(sites - m)] = value;
  }
  return GainProfile(std::move(g), kind, amplitude, seed);
}

GainProfile read_profile(std::istream& in, int sites) {
  std::vector<double> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    double value = 0.0;
    if (!(fields >> value)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw ConstructionError("profile line " + std::to_string(line_no) + ": not a number");
    }
    std::string extra;
    if (fields >> extra) {
      throw ConstructionError("profile line " + std::to_string(line_no) +
                              ": expected one value per line");
    }
    values.push_back(value);
  }
  if (static_cast<int>(values.size()) != sites) {
    throw ConstructionError("profile has " + std::to_string(values.size()) +
                            " values, expected M = " + std::to_string(sites));
  }
  return GainProfile::custom(std::move(values));
}

GainProfile read_profile_file(const std::string& path, int sites) {
  std::ifstream in(path);
  if (!in) throw ConstructionError("cannot open profile file '" + path + "'");
  return read_profile(in, sites);
}

LatticeSpec LatticeSpec::from_ratio(int sites, double u, GainProfile profile, double w) {
  if (!(u > 0.0) || !std::isfinite(u)) {
    throw ConstructionError("hopping ratio u = w/v must be finite and positive");
  }
  return LatticeSpec{sites, w / u, w, std::move(profile)};
}

LatticeSpec LatticeSpec::hermitian(int sites, double v, double w) {
  return LatticeSpec{sites, v, w, GainProfile::zero(sites)};
}

void LatticeSpec::validate() const {
  check_sites(sites);
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ConstructionError("intra-cell hopping v must be finite and positive");
  }
  if (!(w > 0.0) || !std::isfinite(w)) {
    throw ConstructionError("inter-cell hopping w must be finite and positive");
  }
  if (profile.sites() != sites) {
    throw ConstructionError("gain profile length " + std::to_string(profile.sites()) +
                            " does not match M = " + std::to_string(sites));
  }
  profile.validate();
}

ComplexMatrix build_hamiltonian(const LatticeSpec& spec, Validation mode) {
  if (mode == Validation::enforce) {
    spec.validate();
  } else {
    check_sites(spec.sites);
    if (spec.profile.sites() != spec.sites) {
      throw ConstructionError("gain profile length does not match M");
    }
  }

  const Eigen::Index n = spec.sites;
  ComplexMatrix h = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    const double t = i % 2 == 0 ? spec.v : spec.w;
    h(i, i + 1) = t;
    h(i + 1, i) = t;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    h(i, i) = cplx(0.0, site_sign(i) * spec.profile[static_cast<std::size_t>(i)]);
  }
  return h;
}

SymmetryResiduals symmetry_residuals(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) throw Error("symmetry_residuals: matrix is not square");
  if (h.rows() % 2 != 0) throw Error("symmetry_residuals: dimension must be even");

  const Eigen::Index n = h.rows();
  SymmetryResiduals r;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double si = site_sign(i);
      const double sj = site_sign(j);
      // {Sigma_z, H}_ij = (s_i + s_j) H_ij
      r.chiral = std::max(r.chiral, std::abs((si + sj) * h(i, j)));
      // PT H (PT)^-1 = P conj(H) P
      r.pt_commutator =
          std::max(r.pt_commutator, std::abs(std::conj(h(n - 1 - i, n - 1 - j)) - h(i, j)));
      // Sigma_z T H (Sigma_z T)^-1 = Sigma_z conj(H) Sigma_z
      r.pseudo_anti_hermitian =
          std::max(r.pseudo_anti_hermitian, std::abs(si * sj * std::conj(h(i, j)) + h(i, j)));
    }
  }
  return r;
}

}  // namespace ptssh
