#include "realpos/instances.hpp"

#include <cmath>
#include <numbers>

#include "realpos/transforms.hpp"

namespace realpos {

namespace {

const ComplexMatrix& need(const std::optional<ComplexMatrix>& m, const char* name, const std::string& theorem) {
  if (!m) throw InputError("interp " + theorem + ": matrix '" + name + "' is required");
  return *m;
}

// Diagonal 0/1 pattern with rank in [lo, hi].
std::vector<int> random_pattern(std::size_t n, std::size_t lo, std::size_t hi, Rng& rng) {
  const std::size_t rank = rng.index(lo, hi);
  std::vector<int> d(n, 0);
  std::vector<std::size_t> idx(n);
  for (std::size_t k = 0; k < n; ++k) idx[k] = k;
  for (std::size_t k = 0; k < rank; ++k) {
    const std::size_t j = rng.index(k, n - 1);
    std::swap(idx[k], idx[j]);
    d[idx[k]] = 1;
  }
  return d;
}

ComplexMatrix pattern_projection(const std::vector<int>& d, const ComplexMatrix& u) {
  std::vector<cplx> diag(d.begin(), d.end());
  return u * ComplexMatrix::diagonal(diag) * u.adjoint();
}

ComplexMatrix scaled(const ComplexMatrix& m, double norm) {
  const double nm = op_norm(m);
  return nm == 0.0 ? m : (norm / nm) * m;
}

ComplexMatrix random_psd_in(const MatrixAlgebra& cstar, double norm, Rng& rng) {
  const ComplexMatrix y = gen_element(cstar, rng);
  return scaled(y.adjoint() * y, norm);
}

ComplexMatrix random_accretive_in(const MatrixAlgebra& a, Rng& rng) {
  const ComplexMatrix y = gen_element(a, rng);
  const double shift = -min_real_eig(y) + rng.uniform(0.0, 0.3);
  return y + shift * ComplexMatrix::identity(a.ambient_dim);
}

// Intersection of m half-planes around W(t): evenly spaced outward normals,
// each edge pushed beyond the support of W(t) by a random margin. Computed by
// clipping a large square, so redundant half-planes drop out.
ConvexRegion polygon_around(const ComplexMatrix& t, Rng& rng) {
  const std::size_t m = rng.index(3, 6);
  const double theta0 = rng.uniform(0.0, 2 * std::numbers::pi);
  std::vector<cplx> poly{cplx(-10, -10), cplx(10, -10), cplx(10, 10), cplx(-10, 10)};
  for (std::size_t k = 0; k < m; ++k) {
    const double th = theta0 + 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m);
    const double h = max_eig(real_part(std::polar(1.0, -th) * t)) + rng.uniform(0.02, 0.3);
    auto side = [&](cplx z) { return (std::polar(1.0, -th) * z).real() - h; };
    std::vector<cplx> next;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const cplx a = poly[i], b = poly[(i + 1) % poly.size()];
      const double sa = side(a), sb = side(b);
      if (sa <= 0) next.push_back(a);
      if ((sa < 0 && sb > 0) || (sa > 0 && sb < 0)) next.push_back(a + (sa / (sa - sb)) * (b - a));
    }
    poly = std::move(next);
  }
  std::vector<cplx> v;
  for (const auto& z : poly)
    if (v.empty() || std::abs(z - v.back()) > 1e-9) v.push_back(z);
  while (v.size() > 1 && std::abs(v.front() - v.back()) <= 1e-9) v.pop_back();
  return ConvexRegion(std::move(v));
}

}  // namespace

const std::vector<std::string>& interp_theorems() {
  static const std::vector<std::string> names{"dominate", "decompose",      "np",  "urysohn",
                                              "strict-urysohn", "peak", "tietze"};
  return names;
}

MatrixAlgebra conjugate_algebra(const MatrixAlgebra& a, const ComplexMatrix& u) {
  std::vector<ComplexMatrix> elems;
  for (const auto& b : a.basis) elems.push_back(u * b * u.adjoint());
  MatrixAlgebra out = span_of(a.ambient_dim, elems, a.label);
  out.contains_identity = a.contains_identity;
  return out;
}

InterpResult solve_interp(const InterpProblem& pr, const InterpOptions& opts) {
  const auto& t = pr.theorem;
  if (t == "dominate") return dominate(pr.algebra, need(pr.b, "b", t), pr.eps, opts);
  if (t == "decompose") return decompose(pr.algebra, need(pr.b, "b", t), opts);
  if (t == "np") return interp_np(pr.algebra, need(pr.c, "c", t), opts);
  if (t == "urysohn") return urysohn_interpolate(pr.algebra, need(pr.q, "q", t), need(pr.u, "u", t), pr.eps, opts);
  if (t == "strict-urysohn") return strict_urysohn(pr.algebra, need(pr.q, "q", t), need(pr.p, "p", t), opts);
  if (t == "peak") return peak_interpolate(pr.algebra, need(pr.q, "q", t), need(pr.b, "b", t), opts);
  if (t == "tietze") {
    if (!pr.region) throw InputError("interp tietze: region E is required");
    return tietze_lift(pr.algebra, need(pr.q, "q", t), need(pr.b, "b", t), *pr.region, opts);
  }
  throw InputError("unknown interpolation theorem '" + t + "'");
}

InterpProblem random_interp_problem(std::string_view theorem, std::size_t n, Rng& rng) {
  if (n < 2 || n > 6) throw DimensionError("random_interp_problem: n must be in [2, 6]");
  static const char* kinds[] = {"full", "diag", "upper", "blockupper"};
  const std::string kind = kinds[rng.index(0, 3)];
  std::string name = kind + ":" + std::to_string(n);
  if (kind == "blockupper") {
    const std::size_t n1 = rng.index(1, n - 1);
    name = "blockupper:" + std::to_string(n1) + "," + std::to_string(n - n1);
  }
  const ComplexMatrix w = gen_unitary(n, rng);
  InterpProblem pr;
  pr.theorem = std::string(theorem);
  pr.algebra = conjugate_algebra(canned_algebra(name), w);
  pr.algebra.label = name + " (conjugated)";
  const auto id = ComplexMatrix::identity(n);

  if (theorem == "dominate" || theorem == "np") {
    const ComplexMatrix m = random_psd_in(cstar_envelope(pr.algebra), rng.uniform(0.05, 0.95), rng);
    (theorem == "dominate" ? pr.b : pr.c) = m;
  } else if (theorem == "decompose") {
    pr.b = scaled(gen_element(pr.algebra, rng), rng.uniform(0.2, 0.95));
  } else if (theorem == "urysohn") {
    const auto dq = random_pattern(n, 0, n - 1, rng);
    pr.q = pattern_projection(dq, w);
    if (rng.index(0, 1) == 0) {
      auto du = dq;
      for (auto& x : du)
        if (!x && rng.index(0, 1)) x = 1;
      pr.u = pattern_projection(du, w);
    } else {
      // q plus a random direction orthogonal to it: usually outside A.
      ComplexMatrix v(n, 1);
      for (auto& x : v.entries()) x = rng.complex_normal();
      v = (id - *pr.q) * v;
      v = v / v.frobenius_norm();
      pr.u = *pr.q + v * v.adjoint();
    }
  } else if (theorem == "strict-urysohn") {
    const auto dp = random_pattern(n, 1, n, rng);
    auto dq = dp;
    for (auto& x : dq)
      if (x && rng.index(0, 1)) x = 0;
    pr.p = pattern_projection(dp, w);
    pr.q = pattern_projection(dq, w);
  } else if (theorem == "peak") {
    pr.q = pattern_projection(random_pattern(n, 1, n - 1, rng), w);
    const ComplexMatrix h = f_transform(random_accretive_in(pr.algebra, rng));
    const ComplexMatrix g = gen_element(pr.algebra, rng);
    const ComplexMatrix qc = id - *pr.q;
    pr.b = *pr.q * h * *pr.q + qc * g * qc;
  } else if (theorem == "tietze") {
    pr.q = pattern_projection(random_pattern(n, 1, n - 1, rng), w);
    const ComplexMatrix h = scaled(gen_element(pr.algebra, rng), rng.uniform(0.3, 0.95));
    const ComplexMatrix g = gen_element(pr.algebra, rng);
    const ComplexMatrix qc = id - *pr.q;
    pr.b = *pr.q * h * *pr.q + qc * g * qc;
    const ComplexMatrix wq = range_isometry(*pr.q);
    pr.region = polygon_around(wq.adjoint() * *pr.b * wq, rng);
  } else {
    throw InputError("unknown interpolation theorem '" + std::string(theorem) + "'");
  }
  return pr;
}

}  // namespace realpos
