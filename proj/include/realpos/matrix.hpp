#pragma once

// Dense complex matrix kernels shared by every other module.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "realpos/errors.hpp"

namespace realpos {

using cplx = std::complex<double>;

/// Dense row-major complex matrix.
///
/// Public operations of the library work on square matrices; rectangular
/// shapes exist only as intermediate blocks (isometries, multiplier pairs of
/// linear maps). All entries are finite: constructors that take data reject
/// NaN and Inf.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t n) : ComplexMatrix(n, n) {}
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zero(std::size_t n) { return ComplexMatrix(n); }
  static ComplexMatrix diagonal(std::span<const cplx> d);
  static ComplexMatrix diagonal(std::initializer_list<cplx> d);
  static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows);
  /// Matrix unit E_ij (zero-based indices) of size n.
  static ComplexMatrix unit(std::size_t n, std::size_t i, std::size_t j);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  /// Ambient dimension of a square matrix; throws DimensionError otherwise.
  std::size_t dim() const;

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<cplx> entries() { return data_; }
  std::span<const cplx> entries() const { return data_; }

  ComplexMatrix adjoint() const;
  /// Column j as an (rows x 1) matrix.
  ComplexMatrix column(std::size_t j) const;
  /// Rows [r0, r0+nr) and columns [c0, c0+nc).
  ComplexMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& b);

  cplx trace() const;
  double frobenius_norm() const;
  double max_abs() const;
  bool is_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator-(ComplexMatrix a) { return a *= -1.0; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(ComplexMatrix a, double s) { return a *= cplx(s); }
  friend ComplexMatrix operator*(double s, ComplexMatrix a) { return a *= cplx(s); }
  friend ComplexMatrix operator/(ComplexMatrix a, double s) { return a *= cplx(1.0 / s); }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  bool operator==(const ComplexMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

/// Numerical thresholds for every approximate comparison in the library.
struct Tolerances {
  double eq_tol = 1e-9;      // equality of matrices in operator norm
  double psd_slack = 1e-7;   // allowed negative eigenvalue magnitude
  double iter_tol = 1e-10;   // iteration stopping
  int max_iter = 10'000;

  /// Throws InputError unless all fields are positive and psd_slack >= eq_tol.
  void validate() const;
};

/// Outcome of an approximate predicate: the verdict and the raw margin it was
/// decided on.
struct Verdict {
  bool holds = false;
  double margin = 0.0;

  explicit operator bool() const { return holds; }
};

struct HermitianEigen {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // unitary; column k pairs with values[k]
};

/// Eigendecomposition of (H + H*)/2 by cyclic complex Jacobi rotations.
HermitianEigen herm_eig(const ComplexMatrix& h);

struct SingularValues {
  std::vector<double> values;  // descending
  ComplexMatrix u;             // rows x k; columns for zero singular values are zero
  ComplexMatrix v;             // cols x k, unitary when rows >= cols
};

/// Thin SVD by one-sided (Hestenes) Jacobi rotations.
SingularValues svd(const ComplexMatrix& m);

/// Largest singular value, sqrt(lambda_max(M* M)).
double op_norm(const ComplexMatrix& m);

/// Solves M X = B by LU with partial pivoting. Throws SingularMatrixError when
/// a pivot falls below 1e-13 ||M||.
ComplexMatrix solve(const ComplexMatrix& m, const ComplexMatrix& b);

/// Hermitian part (M + M*)/2.
ComplexMatrix real_part(const ComplexMatrix& m);
/// Skew part as a Hermitian matrix, (M - M*)/(2i).
ComplexMatrix imag_part(const ComplexMatrix& m);

/// lambda_min((M + M*)/2).
double min_real_eig(const ComplexMatrix& m);
double max_eig(const ComplexMatrix& hermitian);
double min_eig(const ComplexMatrix& hermitian);

/// Trace inner product <X, Y> = tr(Y* X).
cplx inner(const ComplexMatrix& x, const ComplexMatrix& y);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// M^k for a non-negative integer k.
ComplexMatrix int_power(const ComplexMatrix& m, unsigned k);

/// Orthogonal projection onto the span of eigenvectors of a Hermitian matrix
/// with eigenvalue above `threshold`.
ComplexMatrix spectral_projection_above(const ComplexMatrix& hermitian, double threshold);

/// Orthonormal basis (as columns) of the range of a projection-like Hermitian
/// matrix: eigenvectors with eigenvalue > 1/2.
ComplexMatrix range_isometry(const ComplexMatrix& projection);

/// Predicates; each returns the verdict with its margin.
Verdict is_psd(const ComplexMatrix& hermitian, double slack);
Verdict is_projection(const ComplexMatrix& p, double tol);
Verdict approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol);

/// Throws DimensionError unless `m` is square (and of size `n` when n > 0).
void require_square(const ComplexMatrix& m, const char* what, std::size_t n = 0);

}  // namespace realpos
