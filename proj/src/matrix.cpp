#include "realpos/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace realpos {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Unitary 2x2 rotation J with J* [[a, b], [conj(b), d]] J diagonal.
struct Rotation {
  cplx j00, j01, j10, j11;
};

Rotation jacobi_rotation(double a, double d, cplx b) {
  const double mag = std::abs(b);
  const cplx phase_conj = std::conj(b) / mag;  // e^{-i phi}
  const double theta = (d - a) / (2.0 * mag);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  return {c, s, -s * phase_conj, c * phase_conj};
}

void rotate_columns(ComplexMatrix& m, std::size_t p, std::size_t q, const Rotation& r) {
  for (std::size_t k = 0; k < m.rows(); ++k) {
    const cplx mp = m(k, p);
    const cplx mq = m(k, q);
    m(k, p) = mp * r.j00 + mq * r.j10;
    m(k, q) = mp * r.j01 + mq * r.j11;
  }
}

void rotate_rows_adjoint(ComplexMatrix& m, std::size_t p, std::size_t q, const Rotation& r) {
  for (std::size_t k = 0; k < m.cols(); ++k) {
    const cplx mp = m(p, k);
    const cplx mq = m(q, k);
    m(p, k) = std::conj(r.j00) * mp + std::conj(r.j10) * mq;
    m(q, k) = std::conj(r.j01) * mp + std::conj(r.j11) * mq;
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw DimensionError("matrix data has " + std::to_string(data_.size()) + " entries, expected " +
                         std::to_string(rows_ * cols_));
  }
  if (!is_finite()) throw InputError("matrix entries must be finite");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> d) {
  ComplexMatrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  if (!m.is_finite()) throw InputError("matrix entries must be finite");
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<cplx> d) {
  return diagonal(std::span<const cplx>(d.begin(), d.size()));
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<cplx> data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionError("ragged matrix rows");
    data.insert(data.end(), row.begin(), row.end());
  }
  return ComplexMatrix(r, c, std::move(data));
}

ComplexMatrix ComplexMatrix::unit(std::size_t n, std::size_t i, std::size_t j) {
  ComplexMatrix m(n);
  m(i, j) = 1.0;
  return m;
}

std::size_t ComplexMatrix::dim() const {
  if (!is_square()) {
    throw DimensionError("expected a square matrix, got " + std::to_string(rows_) + "x" +
                         std::to_string(cols_));
  }
  return rows_;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::column(std::size_t j) const { return block(0, j, rows_, 1); }

ComplexMatrix ComplexMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr,
                                   std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("block out of range");
  ComplexMatrix out(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
  return out;
}

void ComplexMatrix::set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw DimensionError("block out of range");
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

cplx ComplexMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

bool ComplexMatrix::is_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix sum: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix difference: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("matrix product: inner dimensions differ");
  ComplexMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx(0.0)) continue;
      const cplx* brow = &b.data_[k * b.cols_];
      cplx* orow = &out.data_[i * out.cols_];
      for (std::size_t j = 0; j < b.cols_; ++j) orow[j] += aik * brow[j];
    }
  }
  return out;
}

void Tolerances::validate() const {
  if (!(eq_tol > 0 && psd_slack > 0 && iter_tol > 0 && max_iter > 0)) {
    throw InputError("tolerances must be strictly positive");
  }
  if (psd_slack < eq_tol) throw InputError("psd_slack must be at least eq_tol");
}

void require_square(const ComplexMatrix& m, const char* what, std::size_t n) {
  if (!m.is_square()) throw DimensionError(std::string(what) + ": matrix must be square");
  if (n != 0 && m.rows() != n) {
    throw DimensionError(std::string(what) + ": expected dimension " + std::to_string(n) +
                         ", got " + std::to_string(m.rows()));
  }
}

HermitianEigen herm_eig(const ComplexMatrix& h) {
  require_square(h, "herm_eig");
  const std::size_t n = h.rows();
  ComplexMatrix a = real_part(h);
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = a.frobenius_norm();

  for (int sweep = 0; sweep < 64 && scale > 0.0; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        if (std::abs(apq) <= 1e-17 * scale) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        rotated = true;
        const Rotation r = jacobi_rotation(a(p, p).real(), a(q, q).real(), apq);
        rotate_columns(a, p, q, r);
        rotate_rows_adjoint(a, p, q, r);
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        rotate_columns(v, p, q, r);
      }
    }
    if (!rotated) break;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
  HermitianEigen out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

SingularValues svd(const ComplexMatrix& m) {
  if (m.rows() < m.cols()) {
    SingularValues t = svd(m.adjoint());
    return {std::move(t.values), std::move(t.v), std::move(t.u)};
  }
  const std::size_t k = m.cols();
  ComplexMatrix g = m;
  ComplexMatrix v = ComplexMatrix::identity(k);

  for (int sweep = 0; sweep < 64; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < k; ++p) {
      for (std::size_t q = p + 1; q < k; ++q) {
        double alpha = 0.0, beta = 0.0;
        cplx gamma = 0.0;
        for (std::size_t i = 0; i < g.rows(); ++i) {
          alpha += std::norm(g(i, p));
          beta += std::norm(g(i, q));
          gamma += std::conj(g(i, p)) * g(i, q);
        }
        if (std::abs(gamma) <= 4.0 * kEps * std::sqrt(alpha * beta) || std::abs(gamma) == 0.0) {
          continue;
        }
        rotated = true;
        const Rotation r = jacobi_rotation(alpha, beta, gamma);
        rotate_columns(g, p, q, r);
        rotate_columns(v, p, q, r);
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sigma(k);
  for (std::size_t j = 0; j < k; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.rows(); ++i) s += std::norm(g(i, j));
    sigma[j] = std::sqrt(s);
  }
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return sigma[i] > sigma[j]; });

  const double smax = k == 0 ? 0.0 : sigma[order[0]];
  SingularValues out{std::vector<double>(k), ComplexMatrix(m.rows(), k), ComplexMatrix(k, k)};
  for (std::size_t c = 0; c < k; ++c) {
    const std::size_t j = order[c];
    out.values[c] = sigma[j];
    for (std::size_t i = 0; i < k; ++i) out.v(i, c) = v(i, j);
    if (sigma[j] > 1e-300 && sigma[j] > kEps * 1e-6 * smax) {
      for (std::size_t i = 0; i < m.rows(); ++i) out.u(i, c) = g(i, j) / sigma[j];
    }
  }
  return out;
}

double op_norm(const ComplexMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  const ComplexMatrix gram = m.cols() <= m.rows() ? m.adjoint() * m : m * m.adjoint();
  const auto eig = herm_eig(gram);
  return std::sqrt(std::max(0.0, eig.values.back()));
}

ComplexMatrix solve(const ComplexMatrix& m, const ComplexMatrix& b) {
  require_square(m, "solve");
  const std::size_t n = m.rows();
  if (b.rows() != n) throw DimensionError("solve: right-hand side has wrong row count");
  ComplexMatrix lu = m;
  ComplexMatrix x = b;
  const double threshold = 1e-13 * op_norm(m);

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(lu(i, k)) > best) {
        best = std::abs(lu(i, k));
        piv = i;
      }
    }
    if (!(best > threshold) || best == 0.0) throw SingularMatrixError(k, best);
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
      for (std::size_t j = 0; j < x.cols(); ++j) std::swap(x(k, j), x(piv, j));
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx f = lu(i, k) / lu(k, k);
      if (f == cplx(0.0)) continue;
      lu(i, k) = f;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
      for (std::size_t j = 0; j < x.cols(); ++j) x(i, j) -= f * x(k, j);
    }
  }
  for (std::size_t kk = n; kk-- > 0;) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      cplx s = x(kk, j);
      for (std::size_t c = kk + 1; c < n; ++c) s -= lu(kk, c) * x(c, j);
      x(kk, j) = s / lu(kk, kk);
    }
  }
  return x;
}

ComplexMatrix real_part(const ComplexMatrix& m) {
  require_square(m, "real_part");
  ComplexMatrix out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  return out;
}

ComplexMatrix imag_part(const ComplexMatrix& m) {
  require_square(m, "imag_part");
  ComplexMatrix out(m.rows());
  const cplx half_over_i(0.0, -0.5);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = half_over_i * (m(i, j) - std::conj(m(j, i)));
  return out;
}

double min_real_eig(const ComplexMatrix& m) { return min_eig(real_part(m)); }

double max_eig(const ComplexMatrix& hermitian) {
  if (hermitian.rows() == 0) return 0.0;
  return herm_eig(hermitian).values.back();
}

double min_eig(const ComplexMatrix& hermitian) {
  if (hermitian.rows() == 0) return 0.0;
  return herm_eig(hermitian).values.front();
}

cplx inner(const ComplexMatrix& x, const ComplexMatrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) throw DimensionError("inner: shape mismatch");
  cplx s = 0.0;
  const auto xe = x.entries();
  const auto ye = y.entries();
  for (std::size_t k = 0; k < xe.size(); ++k) s += std::conj(ye[k]) * xe[k];
  return s;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

ComplexMatrix int_power(const ComplexMatrix& m, unsigned k) {
  ComplexMatrix result = ComplexMatrix::identity(m.dim());
  ComplexMatrix base = m;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

ComplexMatrix spectral_projection_above(const ComplexMatrix& hermitian, double threshold) {
  const auto eig = herm_eig(hermitian);
  const std::size_t n = hermitian.rows();
  ComplexMatrix p(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (eig.values[k] <= threshold) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p(i, j) += eig.vectors(i, k) * std::conj(eig.vectors(j, k));
  }
  return p;
}

ComplexMatrix range_isometry(const ComplexMatrix& projection) {
  const auto eig = herm_eig(projection);
  const std::size_t n = projection.rows();
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < n; ++k)
    if (eig.values[k] > 0.5) keep.push_back(k);
  ComplexMatrix w(n, keep.size());
  for (std::size_t c = 0; c < keep.size(); ++c)
    for (std::size_t i = 0; i < n; ++i) w(i, c) = eig.vectors(i, keep[c]);
  return w;
}

Verdict is_psd(const ComplexMatrix& hermitian, double slack) {
  const double m = min_eig(real_part(hermitian));
  return {m >= -slack, m};
}

Verdict is_projection(const ComplexMatrix& p, double tol) {
  require_square(p, "is_projection");
  const double margin = std::max(op_norm(p * p - p), op_norm(p - p.adjoint()));
  return {margin <= tol, margin};
}

Verdict approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  const double margin = op_norm(a - b);
  return {margin <= tol, margin};
}

}  // namespace realpos
