#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace realpos {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not fit (non-square input, mismatched dimensions, size caps).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Malformed user input: bad JSON, degenerate regions, unknown names.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  SingularMatrixError(std::size_t pivot, double magnitude)
      : Error("singular matrix: pivot " + std::to_string(pivot) + " has magnitude " +
              std::to_string(magnitude)),
        pivot_index(pivot),
        pivot_magnitude(magnitude) {}

  std::size_t pivot_index;
  double pivot_magnitude;
};

/// Eigenvector matrix too ill-conditioned for the spectral power route.
class DefectiveMatrixError : public Error {
 public:
  explicit DefectiveMatrixError(double cond)
      : Error("eigenvector condition number " + std::to_string(cond) +
              " exceeds cap; use the Balakrishnan quadrature route"),
        condition(cond) {}

  double condition;
};

/// A solver produced an answer that failed independent post-verification.
class VerificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace realpos
