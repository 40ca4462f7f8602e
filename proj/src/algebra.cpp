#include "realpos/algebra.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <random>

#include "realpos/linalg.hpp"

namespace realpos {

namespace {

constexpr double kRankCut = 1e-10;

// Orthogonalizes v against the basis twice; appends the normalized remainder
// when its Frobenius norm exceeds `cut`.
bool try_append(std::vector<ComplexMatrix>& basis, ComplexMatrix v, double cut) {
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& b : basis) v -= inner(v, b) * b;
  const double r = v.frobenius_norm();
  if (r <= cut) return false;
  basis.push_back(v / r);
  return true;
}

void finish(MatrixAlgebra& a) {
  a.contains_identity = contains(a, ComplexMatrix::identity(a.ambient_dim)).holds;
}

void check_members(std::size_t n, const std::vector<ComplexMatrix>& ms, const char* what) {
  for (const auto& m : ms) require_square(m, what, n);
}

std::size_t parse_size(std::string_view s) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v == 0) {
    throw InputError("invalid size '" + std::string(s) + "' in algebra name");
  }
  return v;
}

}  // namespace

std::vector<cplx> MatrixAlgebra::coordinates(const ComplexMatrix& m) const {
  std::vector<cplx> c(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) c[k] = inner(m, basis[k]);
  return c;
}

ComplexMatrix MatrixAlgebra::combine(std::span<const cplx> coords) const {
  if (coords.size() != basis.size()) throw DimensionError("combine: coordinate count mismatch");
  ComplexMatrix out(ambient_dim);
  for (std::size_t k = 0; k < basis.size(); ++k) out += coords[k] * basis[k];
  return out;
}

ComplexMatrix MatrixAlgebra::project(const ComplexMatrix& m) const {
  require_square(m, "project", ambient_dim);
  return combine(coordinates(m));
}

MatrixAlgebra span_of(std::size_t n, const std::vector<ComplexMatrix>& elements, std::string label) {
  check_members(n, elements, "span_of");
  double scale = 0.0;
  for (const auto& e : elements) scale = std::max(scale, e.frobenius_norm());
  MatrixAlgebra a{n, {}, false, std::move(label)};
  for (const auto& e : elements) try_append(a.basis, e, kRankCut * scale);
  finish(a);
  return a;
}

MatrixAlgebra generate_algebra(const std::vector<ComplexMatrix>& generators, GenerationMode mode,
                               bool with_identity, std::string label) {
  if (generators.empty()) {
    throw InputError("generate_algebra: no generators");
  }
  const std::size_t n = generators.empty() ? 0 : generators.front().rows();
  check_members(n, generators, "generate_algebra");

  std::vector<ComplexMatrix> gens;
  for (const auto& g : generators) {
    const double nrm = g.frobenius_norm();
    if (nrm == 0.0) continue;
    gens.push_back(g / nrm);
    if (mode == GenerationMode::cstar) gens.push_back(gens.back().adjoint());
  }

  MatrixAlgebra a{n, {}, false, std::move(label)};
  std::deque<std::size_t> pending;
  auto add = [&](const ComplexMatrix& m) {
    if (try_append(a.basis, m, kRankCut)) pending.push_back(a.basis.size() - 1);
  };
  if (with_identity) add(ComplexMatrix::identity(n) / std::sqrt(static_cast<double>(n)));
  for (const auto& g : gens) add(g);
  while (!pending.empty() && a.basis.size() < n * n) {
    const std::size_t k = pending.front();
    pending.pop_front();
    for (const auto& g : gens) add(a.basis[k] * g);
  }
  finish(a);
  return a;
}

Verdict contains(const MatrixAlgebra& a, const ComplexMatrix& m, const Tolerances& tol) {
  require_square(m, "contains", a.ambient_dim);
  const double r = op_norm(m - a.project(m));
  return {r <= tol.eq_tol * std::max(1.0, op_norm(m)), r};
}

std::optional<ComplexMatrix> identity_of(const MatrixAlgebra& a, const Tolerances& tol) {
  const std::size_t n = a.ambient_dim;
  const std::size_t d = a.dim();
  if (d == 0) return ComplexMatrix(n);
  if (a.contains_identity) return ComplexMatrix::identity(n);

  // Normal equations of e b_j = b_j, b_j e = b_j over e = sum_k c_k b_k.
  std::vector<ComplexMatrix> left(d * d), right(d * d);  // b_k b_j, b_j b_k
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t j = 0; j < d; ++j) {
      left[k * d + j] = a.basis[k] * a.basis[j];
      right[k * d + j] = a.basis[j] * a.basis[k];
    }
  ComplexMatrix gram(d), rhs(d, 1);
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t l = k; l < d; ++l) {
      cplx s = 0.0;
      for (std::size_t j = 0; j < d; ++j)
        s += inner(left[l * d + j], left[k * d + j]) + inner(right[l * d + j], right[k * d + j]);
      gram(k, l) = s;
      gram(l, k) = std::conj(s);
    }
    cplx r = 0.0;
    for (std::size_t j = 0; j < d; ++j)
      r += inner(a.basis[j], left[k * d + j]) + inner(a.basis[j], right[k * d + j]);
    rhs(k, 0) = r;
  }
  const auto sol = least_squares(gram, rhs, 1e-13);
  std::vector<cplx> c(d);
  for (std::size_t k = 0; k < d; ++k) c[k] = sol.x(k, 0);
  const ComplexMatrix e = a.combine(c);
  for (const auto& b : a.basis) {
    if (op_norm(e * b - b) > tol.eq_tol || op_norm(b * e - b) > tol.eq_tol) return std::nullopt;
  }
  return e;
}

std::optional<ComplexMatrix> unit_projection(const MatrixAlgebra& a, const Tolerances& tol) {
  auto e = identity_of(a, tol);
  if (!e || !is_projection(*e, tol.eq_tol)) return std::nullopt;
  return real_part(*e);
}

MatrixAlgebra unitize(const MatrixAlgebra& a) {
  if (a.contains_identity) return a;
  std::vector<ComplexMatrix> elems = a.basis;
  elems.push_back(ComplexMatrix::identity(a.ambient_dim));
  return span_of(a.ambient_dim, elems, a.label.empty() ? "" : a.label + "+CI");
}

MatrixAlgebra cstar_envelope(const MatrixAlgebra& a) {
  if (a.dim() == 0) return a;
  return generate_algebra(a.basis, GenerationMode::cstar, false, "C*(" + a.label + ")");
}

AHResult a_h(const MatrixAlgebra& a, std::uint64_t seed, const Tolerances& tol, AHOptions opts) {
  const std::size_t n = a.ambient_dim;
  const std::size_t d = a.dim();
  AHResult out;

  // D = A ∩ A*: pairs (c, c') with sum c_k b_k = sum c'_k b_k^*.
  std::vector<ComplexMatrix> cols;
  for (const auto& b : a.basis) cols.push_back(b);
  for (const auto& b : a.basis) cols.push_back(-1.0 * b.adjoint());
  std::vector<ComplexMatrix> d_elems;
  if (d > 0) {
    const ComplexMatrix z = null_space(vectorize_columns(cols), kRankCut);
    for (std::size_t m = 0; m < z.cols(); ++m) {
      std::vector<cplx> c(d);
      for (std::size_t k = 0; k < d; ++k) c[k] = z(k, m);
      d_elems.push_back(a.combine(c));
    }
  }
  const MatrixAlgebra sa = span_of(n, d_elems, "A∩A*");
  auto q = identity_of(sa, tol);
  out.q = q ? real_part(*q) : ComplexMatrix(n);

  std::vector<ComplexMatrix> compressed;
  for (const auto& b : a.basis) compressed.push_back(out.q * b * out.q);
  out.a_h = span_of(n, compressed, a.label.empty() ? "A_H" : a.label + "_H");

  // Corroboration: ascend lambda_min(Re a) on the unit sphere of A.
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<ComplexMatrix> real_basis;
  for (const auto& b : a.basis) {
    real_basis.push_back(b);
    real_basis.push_back(cplx(0, 1) * b);
  }
  for (int s = 0; s < opts.starts && d > 0; ++s) {
    std::vector<double> c(real_basis.size());
    for (auto& v : c) v = gauss(rng);
    auto assemble = [&] {
      double nrm = 0.0;
      for (double v : c) nrm += v * v;
      nrm = std::sqrt(nrm);
      for (double& v : c) v /= nrm;
      ComplexMatrix x(n);
      for (std::size_t k = 0; k < c.size(); ++k) x += c[k] * real_basis[k];
      return x;
    };
    ComplexMatrix x = assemble();
    for (int step = 0; step < opts.steps; ++step) {
      const auto eig = herm_eig(real_part(x));
      const ComplexMatrix v = eig.vectors.column(0);
      const double eta = 0.5 / std::sqrt(1.0 + step);
      for (std::size_t k = 0; k < c.size(); ++k)
        c[k] += eta * (v.adjoint() * real_basis[k] * v)(0, 0).real();
      x = assemble();
    }
    if (min_real_eig(x) < -tol.psd_slack) continue;
    ++out.accretive_samples;
    const double r = std::max({op_norm(out.q * x - x), op_norm(x * out.q - x),
                               contains(out.a_h, x, tol).margin});
    out.max_sample_residual = std::max(out.max_sample_residual, r);
  }
  if (out.a_h.dim() == 0 && out.accretive_samples == 0) {
    out.warning = "no nonzero accretive element found; A contains no nonzero projection";
  }
  return out;
}

MatrixAlgebra amplify(const MatrixAlgebra& a, std::size_t k) {
  const std::size_t n = a.ambient_dim;
  if (k == 0 || k * n > 64) throw DimensionError("amplify: k*n must lie in [1, 64]");
  MatrixAlgebra out{k * n, {}, false, "M_" + std::to_string(k) + "(" + a.label + ")"};
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (const auto& b : a.basis) {
        ComplexMatrix m(k * n);
        m.set_block(i * n, j * n, b);
        out.basis.push_back(std::move(m));
      }
  finish(out);
  return out;
}

MatrixAlgebra direct_sum(const MatrixAlgebra& a, const MatrixAlgebra& b) {
  const std::size_t n = a.ambient_dim + b.ambient_dim;
  MatrixAlgebra out{n, {}, false, a.label + "⊕" + b.label};
  for (const auto& x : a.basis) {
    ComplexMatrix m(n);
    m.set_block(0, 0, x);
    out.basis.push_back(std::move(m));
  }
  for (const auto& y : b.basis) {
    ComplexMatrix m(n);
    m.set_block(a.ambient_dim, a.ambient_dim, y);
    out.basis.push_back(std::move(m));
  }
  finish(out);
  return out;
}

double closure_residual(const MatrixAlgebra& a) {
  double worst = 0.0;
  for (const auto& x : a.basis)
    for (const auto& y : a.basis) {
      const ComplexMatrix p = x * y;
      worst = std::max(worst, op_norm(p - a.project(p)));
    }
  return worst;
}

double span_distance(const MatrixAlgebra& a, const MatrixAlgebra& b) {
  if (a.ambient_dim != b.ambient_dim) throw DimensionError("span_distance: ambient sizes differ");
  double worst = 0.0;
  for (const auto& x : a.basis) worst = std::max(worst, op_norm(x - b.project(x)));
  for (const auto& y : b.basis) worst = std::max(worst, op_norm(y - a.project(y)));
  return worst;
}

MatrixAlgebra canned_algebra(std::string_view name) {
  const auto colon = name.find(':');
  if (colon == std::string_view::npos) throw InputError("algebra name needs a ':' argument");
  const std::string_view kind = name.substr(0, colon);
  const std::string_view arg = name.substr(colon + 1);
  const std::string label(name);
  std::vector<ComplexMatrix> elems;

  if (kind == "full" || kind == "upper" || kind == "diag") {
    const std::size_t n = parse_size(arg);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (kind == "upper" && j < i) continue;
        if (kind == "diag" && j != i) continue;
        elems.push_back(ComplexMatrix::unit(n, i, j));
      }
    return span_of(n, elems, label);
  }
  if (kind == "blockupper") {
    const auto comma = arg.find(',');
    if (comma == std::string_view::npos) throw InputError("blockupper needs n1,n2");
    const std::size_t n1 = parse_size(arg.substr(0, comma));
    const std::size_t n2 = parse_size(arg.substr(comma + 1));
    const std::size_t n = n1 + n2;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!(i >= n1 && j < n1)) elems.push_back(ComplexMatrix::unit(n, i, j));
    return span_of(n, elems, label);
  }
  if (kind == "span") {
    const auto colon2 = arg.find(':');
    if (colon2 == std::string_view::npos) throw InputError("span needs n:E11,E12,...");
    const std::size_t n = parse_size(arg.substr(0, colon2));
    std::string_view rest = arg.substr(colon2 + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view tok = rest.substr(0, comma);
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      if (tok.size() != 3 || tok[0] != 'E') throw InputError("bad matrix unit '" + std::string(tok) + "'");
      const std::size_t i = static_cast<std::size_t>(tok[1] - '0');
      const std::size_t j = static_cast<std::size_t>(tok[2] - '0');
      if (i < 1 || i > n || j < 1 || j > n) throw InputError("matrix unit out of range: " + std::string(tok));
      elems.push_back(ComplexMatrix::unit(n, i - 1, j - 1));
    }
    MatrixAlgebra a = span_of(n, elems, label);
    if (closure_residual(a) > 1e-8) throw InputError("span '" + label + "' is not closed under products");
    return a;
  }
  throw InputError("unknown algebra kind '" + std::string(kind) + "'");
}

}  // namespace realpos
