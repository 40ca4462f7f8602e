#pragma once

// Least-squares and null-space helpers built on the Jacobi SVD.

#include <cstddef>

#include "realpos/matrix.hpp"

namespace realpos {

struct LeastSquares {
  ComplexMatrix x;       // minimum-norm minimizer of ||A x - b||_F
  double residual = 0;   // ||A x - b||_F
  std::size_t rank = 0;  // singular values above rel_cut * sigma_max
};

/// Singular values at or below max(rel_cut * sigma_max, abs_cut) are dropped.
LeastSquares least_squares(const ComplexMatrix& a, const ComplexMatrix& b, double rel_cut = 1e-10,
                           double abs_cut = 0.0);

/// Orthonormal basis (columns) of ker A; singular values at or below
/// max(rel_cut * sigma_max, abs_cut) count as zero. Returns a (cols x k) matrix.
ComplexMatrix null_space(const ComplexMatrix& a, double rel_cut = 1e-10, double abs_cut = 0.0);

/// Stacks a list of equally sized matrices as columns of their row-major
/// vectorizations.
ComplexMatrix vectorize_columns(const std::vector<ComplexMatrix>& ms);

}  // namespace realpos
