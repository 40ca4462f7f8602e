#include "realpos/cones.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace realpos {

namespace {

// Hermitian part of e^{i phi} x.
double min_rotated_real(const ComplexMatrix& x, double phi) {
  return min_real_eig(std::polar(1.0, phi) * x);
}

}  // namespace

Verdict is_accretive(const ComplexMatrix& x, const Tolerances& tol) {
  const double m = min_real_eig(x);
  return {m >= -tol.psd_slack, m};
}

FMembership f_membership(const ComplexMatrix& x, const Tolerances& tol) {
  const std::size_t n = x.dim();
  const ComplexMatrix id = ComplexMatrix::identity(n);
  FMembership out;
  out.f_gap = 1.0 - op_norm(id - x);
  out.half_f_gap = 1.0 - op_norm(id - 2.0 * x);
  out.in_f = out.f_gap >= -tol.psd_slack;
  out.in_half_f = out.half_f_gap >= -tol.psd_slack;
  return out;
}

std::optional<CCertificate> c_certificate(const ComplexMatrix& x, const Tolerances& tol) {
  const std::size_t n = x.dim();
  const double xnorm = op_norm(x);
  if (xnorm == 0.0) return CCertificate{0.0, 0.0, 0.0};

  const ComplexMatrix h = x + x.adjoint();
  const auto eig = herm_eig(h);
  const double hnorm = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
  const double cut = 1e-10 * hnorm;
  if (eig.values.front() < -tol.psd_slack) return std::nullopt;

  std::vector<std::size_t> range;
  for (std::size_t k = 0; k < n; ++k) {
    const ComplexMatrix v = eig.vectors.column(k);
    if (eig.values[k] > cut) {
      range.push_back(k);
    } else if (op_norm(x * v) > 1e-6 * xnorm) {
      return std::nullopt;
    }
  }

  // C = lambda_max(D^{-1/2} V_r* x*x V_r D^{-1/2}) on the range of h.
  ComplexMatrix w(n, range.size());
  for (std::size_t c = 0; c < range.size(); ++c)
    for (std::size_t i = 0; i < n; ++i) w(i, c) = eig.vectors(i, range[c]) / std::sqrt(eig.values[range[c]]);
  const ComplexMatrix xw = x * w;
  const double c = range.empty() ? 0.0 : std::max(0.0, max_eig(xw.adjoint() * xw));

  const double margin = min_eig(c * h - x.adjoint() * x);
  return CCertificate{c, margin, cut};
}

std::optional<double> sector_angle(const ComplexMatrix& x, const Tolerances& tol) {
  if (!is_accretive(x, tol)) return std::nullopt;
  const double xnorm = op_norm(x);
  if (xnorm == 0.0) return 0.0;
  const double slack = 1e-14 * xnorm;
  const double half_pi = std::numbers::pi / 2.0;
  auto inside = [&](double rho) {
    return min_rotated_real(x, half_pi - rho) >= -slack && min_rotated_real(x, rho - half_pi) >= -slack;
  };
  if (!inside(half_pi)) return half_pi;
  double lo = 0.0, hi = half_pi;
  if (inside(0.0)) return 0.0;
  while (hi - lo > 1e-11) {
    const double mid = 0.5 * (lo + hi);
    (inside(mid) ? hi : lo) = mid;
  }
  return hi;
}

NearPositive near_positive_report(const ComplexMatrix& x, double eps, const Tolerances& tol) {
  NearPositive out;
  out.accretive = is_accretive(x, tol).holds;
  out.im_norm = op_norm(imag_part(x));
  out.within_eps = out.accretive && out.im_norm < eps;
  return out;
}

NumericalRange numerical_range(const ComplexMatrix& x, std::size_t grid_size) {
  require_square(x, "numerical_range");
  if (grid_size < 8) throw InputError("numerical_range: grid size must be at least 8");
  NumericalRange out;
  out.thetas.resize(grid_size);
  out.support.resize(grid_size);
  out.boundary.resize(grid_size);
  for (std::size_t k = 0; k < grid_size; ++k) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(grid_size);
    const auto eig = herm_eig(real_part(std::polar(1.0, -theta) * x));
    const ComplexMatrix v = eig.vectors.column(x.rows() - 1);
    out.thetas[k] = theta;
    out.support[k] = eig.values.back();
    out.boundary[k] = (v.adjoint() * x * v)(0, 0);
  }
  return out;
}

ConeReport cone_report(const ComplexMatrix& x, const Tolerances& tol) {
  ConeReport r;
  r.accretive_margin = min_real_eig(x);
  r.norm = op_norm(x);
  const auto f = f_membership(x, tol);
  r.f_gap = f.f_gap;
  r.half_f_gap = f.half_f_gap;
  if (auto c = c_certificate(x, tol)) r.c_constant = c->value;
  r.sector_angle = sector_angle(x, tol);
  r.im_norm = op_norm(imag_part(x));
  return r;
}

bool is_strictly_real_positive(const MatrixAlgebra& a, const ComplexMatrix& x, const Tolerances& tol) {
  if (!contains(a, x, tol)) throw PreconditionError("is_strictly_real_positive: x is not in A");
  if (!identity_of(a, tol)) {
    throw PreconditionError("is_strictly_real_positive: A has no identity (nonunital algebras are not supported)");
  }
  const auto e = identity_of(cstar_envelope(a), tol);
  if (!e) throw PreconditionError("is_strictly_real_positive: C*(A) has no identity");
  const ComplexMatrix re = real_part(x);
  if (min_eig(re) < -tol.psd_slack) return false;
  const ComplexMatrix w = range_isometry(real_part(*e));
  if (w.cols() == 0) return false;
  return min_eig(w.adjoint() * re * w) > tol.psd_slack;
}

}  // namespace realpos
