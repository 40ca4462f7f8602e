#include "realpos/linalg.hpp"

#include <algorithm>

namespace realpos {

namespace {

// SVD with a full right factor even when the matrix is wide.
SingularValues full_svd(const ComplexMatrix& a) {
  if (a.rows() >= a.cols()) return svd(a);
  ComplexMatrix padded(a.cols(), a.cols());
  padded.set_block(0, 0, a);
  return svd(padded);
}

}  // namespace

LeastSquares least_squares(const ComplexMatrix& a, const ComplexMatrix& b, double rel_cut, double abs_cut) {
  if (a.rows() != b.rows()) throw DimensionError("least_squares: row counts differ");
  const auto s = full_svd(a);
  const std::size_t n = a.cols();
  const double smax = s.values.empty() ? 0.0 : s.values.front();
  const double cut = std::max(rel_cut * smax, abs_cut);
  LeastSquares out{ComplexMatrix(n, b.cols()), 0.0, 0};
  for (std::size_t k = 0; k < s.values.size(); ++k) {
    if (!(s.values[k] > cut) || s.values[k] == 0.0) break;
    ++out.rank;
    for (std::size_t j = 0; j < b.cols(); ++j) {
      cplx proj = 0.0;
      for (std::size_t i = 0; i < a.rows(); ++i) proj += std::conj(s.u(i, k)) * b(i, j);
      proj /= s.values[k];
      for (std::size_t i = 0; i < n; ++i) out.x(i, j) += s.v(i, k) * proj;
    }
  }
  out.residual = (a * out.x - b).frobenius_norm();
  return out;
}

ComplexMatrix null_space(const ComplexMatrix& a, double rel_cut, double abs_cut) {
  const auto s = full_svd(a);
  const std::size_t n = a.cols();
  const double smax = s.values.empty() ? 0.0 : s.values.front();
  const double cut = std::max(rel_cut * smax, abs_cut);
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < s.values.size(); ++k)
    if (s.values[k] <= cut || s.values[k] == 0.0) keep.push_back(k);
  ComplexMatrix z(n, keep.size());
  for (std::size_t c = 0; c < keep.size(); ++c)
    for (std::size_t i = 0; i < n; ++i) z(i, c) = s.v(i, keep[c]);
  return z;
}

ComplexMatrix vectorize_columns(const std::vector<ComplexMatrix>& ms) {
  if (ms.empty()) return ComplexMatrix(0, 0);
  const std::size_t len = ms.front().rows() * ms.front().cols();
  ComplexMatrix out(len, ms.size());
  for (std::size_t k = 0; k < ms.size(); ++k) {
    if (ms[k].rows() * ms[k].cols() != len) throw DimensionError("vectorize_columns: size mismatch");
    const auto e = ms[k].entries();
    for (std::size_t i = 0; i < len; ++i) out(i, k) = e[i];
  }
  return out;
}

}  // namespace realpos
