#pragma once

#include <stdexcept>
#include <string>

namespace ptssh {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A LatticeSpec or GainProfile violates one of its invariants.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// Arguments outside the domain of an analytic formula (e.g. u <= 1 for edge states).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Eigensolver failed to converge.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, long dimension, double residual)
      : Error(what), dimension_(dimension), residual_(residual) {}
  long dimension() const { return dimension_; }
  double residual() const { return residual_; }

 private:
  long dimension_;
  double residual_;
};

/// Eigenpair continuation could not decide between two candidates.
class AmbiguityError : public Error {
 public:
  using Error::Error;
};

/// Winding-number quadrature did not settle on an integer.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

/// Fewer than two eigenvectors live in the edge-state subspace.
class HybridizationError : public Error {
 public:
  using Error::Error;
};

/// The EP indicator has the same value at both ends of the search interval.
class BracketError : public Error {
 public:
  using Error::Error;
};

/// Invalid experiment configuration (unknown key, bad value, failed precondition).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace ptssh
