#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace oblique {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not conform.
struct DimensionError : Error {
  using Error::Error;
};

/// A sketch fails the rank-preserving condition required of it.
struct RankPreservationError : Error {
  using Error::Error;
};

/// Fresh random draws were exhausted without meeting the rank condition.
struct SketchRetryError : RankPreservationError {
  using RankPreservationError::RankPreservationError;
};

/// A pivot collapsed: the matrix is singular to working precision.
struct SingularMatrixError : Error {
  SingularMatrixError(const std::string& what, std::size_t pivot_step)
      : Error(what), pivot_step(pivot_step) {}
  std::size_t pivot_step;
};

/// The right-hand side lies outside the reachable column space. Carries the
/// distance to the closest reachable point and that point itself.
struct NoSolutionError : Error {
  NoSolutionError(const std::string& what, double residual, std::vector<double> projection)
      : Error(what), residual(residual), projection(std::move(projection)) {}
  double residual;
  std::vector<double> projection;
};

/// Reconstruction residual exceeded tolerance: the target's column or row
/// space is not contained in the supplied bases.
struct ContainmentError : Error {
  ContainmentError(const std::string& what, double residual) : Error(what), residual(residual) {}
  double residual;
};

/// Invalid caller-supplied parameter (rank bounds, index ranges, ...).
struct ParameterError : Error {
  using Error::Error;
};

/// A decrypted vector cannot be attributed to a dictionary column.
struct DecodeError : Error {
  using Error::Error;
};

/// Malformed CSV or JSON input.
struct ParseError : Error {
  using Error::Error;
};

/// Filesystem-level failure.
struct IoError : Error {
  using Error::Error;
};

}  // namespace oblique
