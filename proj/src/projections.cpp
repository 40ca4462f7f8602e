#include "realpos/projections.hpp"

#include <algorithm>
#include <cmath>

#include "realpos/cones.hpp"
#include "realpos/linalg.hpp"
#include "realpos/powers.hpp"

namespace realpos {

namespace {

constexpr int kMaxHalvings = 64;
constexpr int kMaxSquarings = 200;
// Singular values below this are rounding noise regardless of scale.
constexpr double kAbsoluteKernelFloor = 1e-13;

ComplexMatrix projector_from_columns(const ComplexMatrix& w) {
  return w * w.adjoint();
}

ComplexMatrix kernel_complement(const ComplexMatrix& x, double rel_cut) {
  const std::size_t n = x.rows();
  const auto s = svd(x);
  const double smax = s.values.empty() ? 0.0 : s.values.front();
  const double cut = std::max(rel_cut * smax, kAbsoluteKernelFloor);
  ComplexMatrix p(n);
  for (std::size_t k = 0; k < s.values.size(); ++k) {
    if (s.values[k] <= cut) break;
    const ComplexMatrix v = s.v.column(k);
    p += v * v.adjoint();
  }
  return p;
}

void require_projection(const ComplexMatrix& p, const char* what) {
  require_square(p, what);
  if (!is_projection(p, 1e-8)) throw PreconditionError(std::string(what) + ": input is not a projection");
}

}  // namespace

std::string_view to_string(ProjectionMethod m) {
  switch (m) {
    case ProjectionMethod::iterative: return "iterative";
    case ProjectionMethod::oracle: return "oracle";
    case ProjectionMethod::both: return "both";
  }
  return "unknown";
}

std::string_view to_string(ProjectionStatus s) {
  switch (s) {
    case ProjectionStatus::converged: return "converged";
    case ProjectionStatus::diverged: return "diverged";
    case ProjectionStatus::zero: return "zero";
  }
  return "unknown";
}

ProjectionResult support_projection(const ComplexMatrix& x, ProjectionMethod method, const Tolerances& tol) {
  require_square(x, "support_projection");
  const auto acc = is_accretive(x, tol);
  if (!acc) throw PreconditionError("support_projection: input is not accretive");
  const std::size_t n = x.rows();

  ProjectionResult out;
  ComplexMatrix oracle;
  if (method != ProjectionMethod::iterative) oracle = kernel_complement(x, 1e-10);
  if (method == ProjectionMethod::oracle) {
    out.proj = oracle;
    out.method = ProjectionMethod::oracle;
    out.status = oracle.max_abs() == 0.0 ? ProjectionStatus::zero : ProjectionStatus::converged;
    return out;
  }

  out.method = ProjectionMethod::iterative;
  out.status = ProjectionStatus::diverged;
  ComplexMatrix y(n);
  double best = std::numeric_limits<double>::infinity();
  ComplexMatrix best_y(n);
  for (int k = 1; k <= kMaxHalvings && k <= tol.max_iter; ++k) {
    y = power(x, std::ldexp(1.0, -k), tol).value;
    const double defect = op_norm(y * y - y);
    out.trace.push_back(defect);
    out.iterations = k;
    if (defect < best) {
      best = defect;
      best_y = y;
    }
    if (defect <= tol.iter_tol) break;
  }
  // Rounding can stall the defect above iter_tol; the rounded projection is
  // still exact when the defect is far below the 1/2 snapping threshold.
  if (best <= 1e-6) out.status = ProjectionStatus::converged;
  out.proj = spectral_projection_above(real_part(best_y), 0.5);
  if (out.status == ProjectionStatus::converged && out.proj.max_abs() == 0.0) out.status = ProjectionStatus::zero;
  if (method == ProjectionMethod::both) out.oracle_residual = op_norm(out.proj - oracle);
  return out;
}

ProjectionResult peak_projection(const ComplexMatrix& x, ProjectionMethod method, const Tolerances& tol) {
  require_square(x, "peak_projection");
  const std::size_t n = x.rows();
  if (op_norm(x) > 1.0 + tol.eq_tol) throw PreconditionError("peak_projection: requires ||x|| <= 1");

  ProjectionResult out;
  ComplexMatrix oracle;
  if (method != ProjectionMethod::iterative) {
    if (!f_membership(x, tol).in_half_f) {
      throw PreconditionError("peak_projection: the eigenspace oracle requires x in the half-F set");
    }
    oracle = projector_from_columns(null_space(x - ComplexMatrix::identity(n), 1e-9));
  }
  if (method == ProjectionMethod::oracle) {
    out.proj = oracle;
    out.method = ProjectionMethod::oracle;
    out.status = oracle.max_abs() == 0.0 ? ProjectionStatus::zero : ProjectionStatus::converged;
    return out;
  }

  out.method = ProjectionMethod::iterative;
  out.status = ProjectionStatus::diverged;
  ComplexMatrix y = x;
  for (int k = 1; k <= kMaxSquarings && k <= tol.max_iter; ++k) {
    y = y * y;
    out.iterations = k;
    const double nrm = op_norm(y);
    if (nrm < 1e-8) {
      out.status = ProjectionStatus::zero;
      y = ComplexMatrix(n);
      break;
    }
    if (nrm > 1e6) break;
    const double defect = op_norm(y * y - y);
    out.trace.push_back(defect);
    if (defect <= tol.iter_tol) {
      out.status = ProjectionStatus::converged;
      break;
    }
  }
  out.proj = out.status == ProjectionStatus::converged ? spectral_projection_above(real_part(y), 0.5) : y;
  if (method == ProjectionMethod::both) out.oracle_residual = op_norm(out.proj - oracle);
  return out;
}

Verdict is_peak_for(const ComplexMatrix& x, const ComplexMatrix& q, const Tolerances& tol) {
  require_square(x, "is_peak_for");
  require_square(q, "is_peak_for", x.rows());
  if (op_norm(x) > 1.0 + tol.eq_tol) throw PreconditionError("is_peak_for: requires ||x|| <= 1");
  if (!is_projection(q, tol.eq_tol)) throw PreconditionError("is_peak_for: q is not a projection");
  if (op_norm(q * x - q) > tol.eq_tol) throw PreconditionError("is_peak_for: requires q x = q");
  const ComplexMatrix qc = ComplexMatrix::identity(x.rows()) - q;
  const double top = max_eig(real_part(qc * x.adjoint() * x * qc));
  return {top < 1.0 - tol.psd_slack, 1.0 - top};
}

ComplexMatrix join(const ComplexMatrix& p, const ComplexMatrix& q, const Tolerances& tol) {
  require_projection(p, "join");
  require_projection(q, "join");
  require_square(q, "join", p.rows());
  return support_projection(real_part(p + q), ProjectionMethod::oracle, tol).proj;
}

ComplexMatrix meet(const ComplexMatrix& p, const ComplexMatrix& q, const Tolerances& tol) {
  require_projection(p, "meet");
  require_projection(q, "meet");
  const ComplexMatrix id = ComplexMatrix::identity(p.rows());
  return id - join(id - p, id - q, tol);
}

HereditaryPair hsa_and_ideal(const MatrixAlgebra& a, const ComplexMatrix& x, const Tolerances& tol) {
  if (!contains(a, x, tol)) throw PreconditionError("hsa_and_ideal: x is not in A");
  if (!is_accretive(x, tol)) throw PreconditionError("hsa_and_ideal: x is not accretive");
  const std::size_t n = a.ambient_dim;
  std::vector<ComplexMatrix> d_elems, j_elems{x};
  for (const auto& b : a.basis) {
    d_elems.push_back(x * b * x);
    j_elems.push_back(x * b);
  }
  HereditaryPair out{span_of(n, d_elems, "xAx"), span_of(n, j_elems, "xA"), 0.0, 0.0};
  for (const auto& d1 : out.d.basis)
    for (const auto& b : a.basis) {
      const ComplexMatrix left = d1 * b;
      for (const auto& d2 : out.d.basis) {
        const ComplexMatrix m = left * d2;
        out.hereditary_residual = std::max(out.hereditary_residual, op_norm(m - out.d.project(m)));
      }
    }
  const ComplexMatrix s = support_projection(x, ProjectionMethod::oracle, tol).proj;
  for (const auto& d1 : out.d.basis)
    out.support_residual = std::max({out.support_residual, op_norm(s * d1 - d1), op_norm(d1 * s - d1)});
  return out;
}

}  // namespace realpos
