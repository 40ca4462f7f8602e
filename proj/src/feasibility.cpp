#include "realpos/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "realpos/linalg.hpp"
#include "realpos/random.hpp"

namespace realpos {

namespace {

using RealVec = std::vector<double>;

double re_inner(const ComplexMatrix& x, const ComplexMatrix& y) {
  double s = 0.0;
  const auto xe = x.entries();
  const auto ye = y.entries();
  for (std::size_t k = 0; k < xe.size(); ++k) s += xe[k].real() * ye[k].real() + xe[k].imag() * ye[k].imag();
  return s;
}

void axpy(ComplexMatrix& y, double alpha, const ComplexMatrix& x) {
  auto ye = y.entries();
  const auto xe = x.entries();
  for (std::size_t k = 0; k < ye.size(); ++k) ye[k] += alpha * xe[k];
}

void check_map(const LinearMap& m, std::size_t n, const std::string& label) {
  if (m.terms.empty()) throw InputError("constraint '" + label + "': linear map has no terms");
  for (const auto& t : m.terms) {
    if (t.left.cols() != n || t.right.rows() != n) {
      throw InputError("constraint '" + label + "': multiplier shapes do not match the algebra");
    }
    if (t.left.rows() != m.out_rows() || t.right.cols() != m.out_cols()) {
      throw InputError("constraint '" + label + "': terms have different output shapes");
    }
  }
}

void check_shape(const ComplexMatrix& m, const LinearMap& map, const std::string& label) {
  if (m.rows() != map.out_rows() || m.cols() != map.out_cols()) {
    throw InputError("constraint '" + label + "': offset or target has the wrong shape");
  }
}

// Hermitian part of a square matrix.
ComplexMatrix herm(const ComplexMatrix& m) { return real_part(m); }

ComplexMatrix offset_or_zero(const ComplexMatrix& m, const LinearMap& map) {
  return m.rows() == 0 ? ComplexMatrix(map.out_rows(), map.out_cols()) : m;
}

struct Spectral {
  bool is_floor = true;
  double cap = 0.0;
  ComplexMatrix base;
  std::vector<ComplexMatrix> dirs;
  ComplexMatrix dykstra;
};

ComplexMatrix eval(const Spectral& s, const RealVec& z) {
  ComplexMatrix v = s.base;
  for (std::size_t t = 0; t < z.size(); ++t) axpy(v, z[t], s.dirs[t]);
  return v;
}

double spectral_residual(const Spectral& s, const ComplexMatrix& v) {
  if (s.is_floor) return std::max(0.0, -herm_eig(v).values.front());
  const auto sv = svd(v);
  return std::max(0.0, (sv.values.empty() ? 0.0 : sv.values.front()) - s.cap);
}

ComplexMatrix project(const Spectral& s, const ComplexMatrix& v, double shrink) {
  if (s.is_floor) {
    const auto e = herm_eig(v);
    ComplexMatrix out = v;
    for (std::size_t k = 0; k < e.values.size(); ++k) {
      if (e.values[k] >= shrink) break;
      const ComplexMatrix w = e.vectors.column(k);
      axpy(out, shrink - e.values[k], w * w.adjoint());
    }
    return out;
  }
  const double limit = std::max(0.0, s.cap - shrink);
  const auto sv = svd(v);
  ComplexMatrix out = v;
  for (std::size_t k = 0; k < sv.values.size(); ++k) {
    if (sv.values[k] <= limit) break;
    axpy(out, limit - sv.values[k], sv.u.column(k) * sv.v.column(k).adjoint());
  }
  return out;
}

// Real orthonormal basis of the real null space of a real matrix, from the
// complex null space returned by the SVD.
std::vector<RealVec> real_null_space(const ComplexMatrix& e, double abs_cut) {
  const ComplexMatrix nc = null_space(e, 1e-10, abs_cut);
  const std::size_t m = e.cols();
  const std::size_t k = nc.cols();
  std::vector<RealVec> out;
  for (std::size_t j = 0; j < k && out.size() < k; ++j) {
    for (int part = 0; part < 2 && out.size() < k; ++part) {
      RealVec v(m);
      for (std::size_t i = 0; i < m; ++i) v[i] = part == 0 ? nc(i, j).real() : nc(i, j).imag();
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& b : out) {
          double d = 0.0;
          for (std::size_t i = 0; i < m; ++i) d += b[i] * v[i];
          for (std::size_t i = 0; i < m; ++i) v[i] -= d * b[i];
        }
      }
      double nrm = 0.0;
      for (double x : v) nrm += x * x;
      nrm = std::sqrt(nrm);
      if (nrm <= 1e-6) continue;
      for (double& x : v) x /= nrm;
      out.push_back(std::move(v));
    }
  }
  return out;
}

}  // namespace

LinearMap LinearMap::identity(std::size_t n) { return sandwich(ComplexMatrix::identity(n), ComplexMatrix::identity(n)); }

LinearMap LinearMap::left(ComplexMatrix p) {
  const std::size_t n = p.cols();
  return sandwich(std::move(p), ComplexMatrix::identity(n));
}

LinearMap LinearMap::right(ComplexMatrix q) {
  const std::size_t n = q.rows();
  return sandwich(ComplexMatrix::identity(n), std::move(q));
}

LinearMap LinearMap::sandwich(ComplexMatrix p, ComplexMatrix q) {
  LinearMap m;
  m.terms.push_back({std::move(p), std::move(q)});
  return m;
}

LinearMap& LinearMap::add(ComplexMatrix p, ComplexMatrix q) {
  terms.push_back({std::move(p), std::move(q)});
  return *this;
}

ComplexMatrix LinearMap::operator()(const ComplexMatrix& a) const {
  ComplexMatrix out(out_rows(), out_cols());
  for (const auto& t : terms) out += t.left * a * t.right;
  return out;
}

std::size_t LinearMap::out_rows() const { return terms.empty() ? 0 : terms.front().left.rows(); }
std::size_t LinearMap::out_cols() const { return terms.empty() ? 0 : terms.front().right.cols(); }

std::string_view to_string(SolveStatus s) {
  return s == SolveStatus::feasible ? "feasible" : "unconverged";
}

double FeasibilitySolution::max_residual() const {
  double m = 0.0;
  for (const auto& r : residuals) m = std::max(m, r.value);
  return m;
}

std::vector<ConstraintResidual> constraint_residuals(const FeasibilityProblem& p, const ComplexMatrix& a) {
  std::vector<ConstraintResidual> out;
  for (const auto& e : p.equalities) out.push_back({e.label, (e.map(a) - e.target).frobenius_norm()});
  for (const auto& f : p.floors) {
    const ComplexMatrix v = herm(f.map(a)) + offset_or_zero(f.offset, f.map);
    out.push_back({f.label, std::max(0.0, -herm_eig(v).values.front())});
  }
  for (const auto& c : p.caps) {
    const ComplexMatrix v = c.map(a) + offset_or_zero(c.offset, c.map);
    out.push_back({c.label, std::max(0.0, op_norm(v) - c.cap)});
  }
  return out;
}

FeasibilitySolution solve_feasibility(const FeasibilityProblem& p, const SolverOptions& opts) {
  const std::size_t n = p.algebra.ambient_dim;
  if (p.equalities.empty() && p.floors.empty() && p.caps.empty()) {
    throw InputError("solve_feasibility: at least one constraint is required");
  }
  if (!(opts.solver_tol > 0.0) || opts.max_rounds < 1 || opts.max_iterations_per_round < 1) {
    throw InputError("solve_feasibility: invalid solver options");
  }
  for (const auto& e : p.equalities) {
    check_map(e.map, n, e.label);
    check_shape(e.target, e.map, e.label);
  }
  for (const auto& f : p.floors) {
    check_map(f.map, n, f.label);
    if (f.map.out_rows() != f.map.out_cols()) throw InputError("constraint '" + f.label + "': floor is not square");
    if (f.offset.rows() != 0) {
      check_shape(f.offset, f.map, f.label);
      if ((f.offset - f.offset.adjoint()).max_abs() > 1e-12 * std::max(1.0, f.offset.max_abs())) {
        throw InputError("constraint '" + f.label + "': floor offset is not Hermitian");
      }
    }
  }
  for (const auto& c : p.caps) {
    check_map(c.map, n, c.label);
    if (c.offset.rows() != 0) check_shape(c.offset, c.map, c.label);
    if (!(c.cap >= 0.0)) throw InputError("constraint '" + c.label + "': negative norm cap");
  }

  // Real basis {b_k, i b_k}: orthonormal for Re tr(X* Y).
  std::vector<ComplexMatrix> basis;
  for (const auto& b : p.algebra.basis) {
    basis.push_back(b);
    basis.push_back(cplx(0, 1) * b);
  }
  const std::size_t m = basis.size();

  // Equalities: min-norm particular solution and null space.
  RealVec c0(m, 0.0);
  std::vector<RealVec> null_dirs;
  if (!p.equalities.empty()) {
    std::size_t rows = 0;
    for (const auto& e : p.equalities) rows += 2 * e.target.rows() * e.target.cols();
    ComplexMatrix sys(rows, m), rhs(rows, 1);
    std::size_t r0 = 0;
    for (const auto& e : p.equalities) {
      const std::size_t len = e.target.rows() * e.target.cols();
      for (std::size_t j = 0; j < m; ++j) {
        const ComplexMatrix img = e.map(basis[j]);
        const auto ie = img.entries();
        for (std::size_t k = 0; k < len; ++k) {
          sys(r0 + 2 * k, j) = ie[k].real();
          sys(r0 + 2 * k + 1, j) = ie[k].imag();
        }
      }
      const auto te = e.target.entries();
      for (std::size_t k = 0; k < len; ++k) {
        rhs(r0 + 2 * k, 0) = te[k].real();
        rhs(r0 + 2 * k + 1, 0) = te[k].imag();
      }
      r0 += 2 * len;
    }
    // Rounding in the multipliers leaves noise of order 1e-16 * scale in
    // identically-zero equations; it must not count as a constraint.
    double scale = 1.0;
    for (const auto& e : p.equalities)
      for (const auto& t : e.map.terms) scale = std::max(scale, op_norm(t.left) * op_norm(t.right));
    const double abs_cut = 1e-11 * scale;
    const auto ls = least_squares(sys, rhs, 1e-10, abs_cut);
    for (std::size_t j = 0; j < m; ++j) c0[j] = ls.x(j, 0).real();
    null_dirs = real_null_space(sys, abs_cut);
  } else {
    for (std::size_t j = 0; j < m; ++j) {
      RealVec v(m, 0.0);
      v[j] = 1.0;
      null_dirs.push_back(std::move(v));
    }
  }

  auto combine = [&](const RealVec& c) {
    ComplexMatrix a(n);
    for (std::size_t j = 0; j < m; ++j)
      if (c[j] != 0.0) axpy(a, c[j], basis[j]);
    return a;
  };
  const std::size_t k = null_dirs.size();
  const ComplexMatrix a0 = combine(c0);
  std::vector<ComplexMatrix> dir_mats;
  for (const auto& d : null_dirs) dir_mats.push_back(combine(d));
  auto value_at = [&](const RealVec& z) {
    ComplexMatrix a = a0;
    for (std::size_t t = 0; t < k; ++t) axpy(a, z[t], dir_mats[t]);
    return a;
  };

  FeasibilitySolution sol;
  auto finish = [&](const ComplexMatrix& a) {
    sol.value = a;
    sol.residuals = constraint_residuals(p, a);
    sol.verdict = sol.max_residual() <= opts.solver_tol ? SolveStatus::feasible : SolveStatus::unconverged;
    return sol;
  };

  // Inconsistent equalities: the affine set is empty, report its gap.
  for (const auto& e : p.equalities) {
    if ((e.map(a0) - e.target).frobenius_norm() > opts.solver_tol) {
      sol.iterations = 1;
      sol.rounds = 1;
      return finish(a0);
    }
  }

  std::vector<Spectral> spec;
  for (const auto& f : p.floors) {
    Spectral s;
    s.is_floor = true;
    s.base = herm(f.map(a0)) + offset_or_zero(f.offset, f.map);
    for (const auto& d : dir_mats) s.dirs.push_back(herm(f.map(d)));
    spec.push_back(std::move(s));
  }
  for (const auto& c : p.caps) {
    Spectral s;
    s.is_floor = false;
    s.cap = c.cap;
    s.base = c.map(a0) + offset_or_zero(c.offset, c.map);
    for (const auto& d : dir_mats) s.dirs.push_back(c.map(d));
    spec.push_back(std::move(s));
  }

  RealVec z(k, 0.0);
  if (opts.start) {
    if (opts.start->rows() != n || opts.start->cols() != n) throw InputError("solve_feasibility: start has wrong size");
    const auto w = p.algebra.coordinates(*opts.start);
    RealVec c(m);
    for (std::size_t j = 0; j < w.size(); ++j) {
      c[2 * j] = w[j].real();
      c[2 * j + 1] = w[j].imag();
    }
    for (std::size_t t = 0; t < k; ++t) {
      double d = 0.0;
      for (std::size_t j = 0; j < m; ++j) d += null_dirs[t][j] * (c[j] - c0[j]);
      z[t] = d;
    }
  }

  if (k == 0 || spec.empty()) {
    sol.iterations = 1;
    sol.rounds = 1;
    return finish(value_at(z));
  }

  // Normal matrix of the pullback least-squares step, with a small proximal
  // term so directions no constraint sees stay where they are.
  ComplexMatrix gram(k);
  double diag_sum = 0.0;
  for (std::size_t s = 0; s < k; ++s) {
    for (std::size_t t = s; t < k; ++t) {
      double g = 0.0;
      for (const auto& c : spec) g += re_inner(c.dirs[s], c.dirs[t]);
      gram(s, t) = g;
      gram(t, s) = g;
    }
    diag_sum += gram(s, s).real();
  }
  const double prox = 1e-10 * std::max(1.0, diag_sum / static_cast<double>(k));
  for (std::size_t s = 0; s < k; ++s) gram(s, s) += prox;
  const ComplexMatrix gram_inv = solve(gram, ComplexMatrix::identity(k));

  const double shrink = 0.1 * opts.solver_tol;
  Rng rng(opts.seed);
  RealVec best_z = z;
  double best = std::numeric_limits<double>::infinity();
  int total = 0;
  constexpr int kWindow = 250;

  for (int round = 1; round <= opts.max_rounds; ++round) {
    sol.rounds = round;
    for (auto& s : spec) s.dykstra = ComplexMatrix(s.base.rows(), s.base.cols());
    double window_start = std::numeric_limits<double>::infinity();
    double round_best = std::numeric_limits<double>::infinity();
    for (int it = 0; it < opts.max_iterations_per_round; ++it) {
      ++total;
      RealVec rhs(k, 0.0);
      double worst = 0.0;
      for (auto& s : spec) {
        const ComplexMatrix v = eval(s, z);
        worst = std::max(worst, spectral_residual(s, v));
        ComplexMatrix target;
        if (opts.dykstra) {
          const ComplexMatrix shifted = v + s.dykstra;
          target = project(s, shifted, shrink);
          s.dykstra = shifted - target;
        } else {
          target = project(s, v, shrink);
        }
        target -= s.base;
        for (std::size_t t = 0; t < k; ++t) rhs[t] += re_inner(s.dirs[t], target);
      }
      if (worst < best) {
        best = worst;
        best_z = z;
      }
      round_best = std::min(round_best, worst);
      if (worst <= opts.solver_tol) break;
      if (it % kWindow == 0) {
        if (it > 0 && round_best > 0.9 * window_start) break;
        window_start = round_best;
      }
      for (std::size_t t = 0; t < k; ++t) rhs[t] += prox * z[t];
      RealVec next(k, 0.0);
      for (std::size_t s = 0; s < k; ++s) {
        double acc = 0.0;
        for (std::size_t t = 0; t < k; ++t) acc += gram_inv(s, t).real() * rhs[t];
        next[s] = acc;
      }
      z = std::move(next);
    }
    if (best <= opts.solver_tol) break;
    // Restart from a random perturbation of the best point.
    z = best_z;
    for (double& x : z) x += rng.normal() / std::sqrt(static_cast<double>(k));
  }
  sol.iterations = total;
  return finish(value_at(best_z));
}

}  // namespace realpos
