#include "realpos/powers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "realpos/cones.hpp"
#include "realpos/projections.hpp"

namespace realpos {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kConditionCap = 1e8;

void require_accretive(const ComplexMatrix& x, const char* what, const Tolerances& tol) {
  require_square(x, what);
  const auto v = is_accretive(x, tol);
  if (!v) {
    throw PreconditionError(std::string(what) + ": input is not accretive (lambda_min(Re x) = " +
                            std::to_string(v.margin) + ")");
  }
}

// Householder reduction to upper Hessenberg form, x = Q H Q*.
void hessenberg(ComplexMatrix& h, ComplexMatrix& q) {
  const std::size_t n = h.rows();
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double alpha_norm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) alpha_norm += std::norm(h(i, k));
    alpha_norm = std::sqrt(alpha_norm);
    if (alpha_norm == 0.0) continue;
    const cplx x0 = h(k + 1, k);
    const cplx phase = std::abs(x0) == 0.0 ? cplx(1.0) : x0 / std::abs(x0);
    std::vector<cplx> v(n, 0.0);
    for (std::size_t i = k + 1; i < n; ++i) v[i] = h(i, k);
    v[k + 1] += phase * alpha_norm;
    double vn = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) vn += std::norm(v[i]);
    vn = std::sqrt(vn);
    for (std::size_t i = k + 1; i < n; ++i) v[i] /= vn;

    // H <- (I - 2vv*) H (I - 2vv*), Q <- Q (I - 2vv*).
    for (std::size_t j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) s += std::conj(v[i]) * h(i, j);
      for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= 2.0 * v[i] * s;
    }
    for (ComplexMatrix* m : {&h, &q}) {
      for (std::size_t i = 0; i < n; ++i) {
        cplx s = 0.0;
        for (std::size_t j = k + 1; j < n; ++j) s += (*m)(i, j) * v[j];
        for (std::size_t j = k + 1; j < n; ++j) (*m)(i, j) -= 2.0 * s * std::conj(v[j]);
      }
    }
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
}

// Shifted complex QR on a Hessenberg matrix; leaves the Schur form in h.
bool schur(ComplexMatrix& h, ComplexMatrix& q) {
  const std::size_t n = h.rows();
  if (n <= 1) return true;
  const double hnorm = std::max(h.frobenius_norm(), std::numeric_limits<double>::min());
  std::size_t hi = n - 1;
  int iter = 0;
  int total = 0;
  std::vector<std::pair<double, cplx>> rot(n);
  while (hi > 0) {
    std::size_t l = hi;
    while (l > 0) {
      double s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
      if (s == 0.0) s = hnorm;
      if (std::abs(h(l, l - 1)) <= kEps * s) {
        h(l, l - 1) = 0.0;
        break;
      }
      --l;
    }
    if (l == hi) {
      --hi;
      iter = 0;
      continue;
    }
    if (++total > 100 * static_cast<int>(n)) return false;
    ++iter;

    const cplx a = h(hi - 1, hi - 1), b = h(hi - 1, hi), c = h(hi, hi - 1), d = h(hi, hi);
    cplx mu;
    if (iter % 11 == 10) {
      mu = d + 0.75 * std::abs(h(hi, hi - 1));
    } else {
      const cplx half = 0.5 * (a - d);
      const cplx disc = std::sqrt(half * half + b * c);
      const cplx m1 = 0.5 * (a + d) + disc, m2 = 0.5 * (a + d) - disc;
      mu = std::abs(m1 - d) < std::abs(m2 - d) ? m1 : m2;
    }

    for (std::size_t k = l; k <= hi; ++k) h(k, k) -= mu;
    for (std::size_t k = l; k < hi; ++k) {
      const cplx x = h(k, k), y = h(k + 1, k);
      const double r = std::hypot(std::abs(x), std::abs(y));
      double cs;
      cplx sn;
      if (r == 0.0) {
        cs = 1.0;
        sn = 0.0;
      } else if (std::abs(x) == 0.0) {
        cs = 0.0;
        sn = std::conj(y) / std::abs(y);
      } else {
        cs = std::abs(x) / r;
        sn = (x / std::abs(x)) * std::conj(y) / r;
      }
      rot[k] = {cs, sn};
      for (std::size_t j = k; j < n; ++j) {
        const cplx p = h(k, j), s = h(k + 1, j);
        h(k, j) = cs * p + sn * s;
        h(k + 1, j) = -std::conj(sn) * p + cs * s;
      }
    }
    for (std::size_t k = l; k < hi; ++k) {
      const auto [cs, sn] = rot[k];
      for (std::size_t i = 0; i <= std::min(k + 1, n - 1); ++i) {
        const cplx p = h(i, k), s = h(i, k + 1);
        h(i, k) = p * cs + s * std::conj(sn);
        h(i, k + 1) = -p * sn + s * cs;
      }
      for (std::size_t i = 0; i < n; ++i) {
        const cplx p = q(i, k), s = q(i, k + 1);
        q(i, k) = p * cs + s * std::conj(sn);
        q(i, k + 1) = -p * sn + s * cs;
      }
    }
    for (std::size_t k = l; k <= hi; ++k) h(k, k) += mu;
  }
  return true;
}

// Symmetric tridiagonal QL with implicit shifts; z carries the first row of
// the eigenvector matrix.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z) {
  const std::size_t n = d.size();
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= kEps * dd) break;
      }
      if (m != l) {
        if (++iter > 60) throw Error("gauss_jacobi: tridiagonal eigensolver did not converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (std::size_t i = m; i-- > l;) {
          const double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          const double zf = z[i + 1];
          z[i + 1] = s * z[i] + c * zf;
          z[i] = c * z[i] - s * zf;
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

ComplexMatrix horner(const std::vector<cplx>& coeffs, const ComplexMatrix& m) {
  const std::size_t n = m.rows();
  ComplexMatrix acc(n);
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    acc = acc * m;
    for (std::size_t i = 0; i < n; ++i) acc(i, i) += coeffs[k];
  }
  return acc;
}

cplx horner(const std::vector<cplx>& coeffs, cplx z) {
  cplx acc = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * z + coeffs[k];
  return acc;
}

}  // namespace

std::string_view to_string(PowerMethod m) {
  switch (m) {
    case PowerMethod::spectral: return "spectral";
    case PowerMethod::balakrishnan: return "balakrishnan";
    case PowerMethod::series: return "series";
  }
  return "unknown";
}

GeneralEigen eigen_general(const ComplexMatrix& x) {
  require_square(x, "eigen_general");
  const std::size_t n = x.rows();
  ComplexMatrix t = x;
  ComplexMatrix q = ComplexMatrix::identity(n);
  hessenberg(t, q);
  GeneralEigen out;
  out.values.resize(n);
  if (!schur(t, q)) {
    out.condition = std::numeric_limits<double>::infinity();
    out.vectors = ComplexMatrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) out.values[k] = t(k, k);
    return out;
  }
  for (std::size_t k = 0; k < n; ++k) out.values[k] = t(k, k);

  const double tnorm = std::max(t.frobenius_norm(), std::numeric_limits<double>::min());
  const double small = 1e-14 * tnorm;
  ComplexMatrix y(n);
  for (std::size_t k = 0; k < n; ++k) {
    y(k, k) = 1.0;
    double ymax = 1.0;
    for (std::size_t j = k; j-- > 0;) {
      cplx num = 0.0;
      for (std::size_t l = j + 1; l <= k; ++l) num += t(j, l) * y(l, k);
      cplx den = t(j, j) - t(k, k);
      if (std::abs(den) <= small) {
        // Coincident eigenvalues: a negligible coupling means a semisimple pair.
        if (std::abs(num) <= 1e-12 * tnorm * ymax) {
          y(j, k) = 0.0;
          continue;
        }
        den = std::abs(den) == 0.0 ? cplx(small) : den * (small / std::abs(den));
      }
      y(j, k) = -num / den;
      ymax = std::max(ymax, std::abs(y(j, k)));
    }
  }
  ComplexMatrix v = q * y;
  for (std::size_t k = 0; k < n; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::norm(v(i, k));
    s = std::sqrt(s);
    for (std::size_t i = 0; i < n; ++i) v(i, k) /= s;
  }
  out.vectors = v;
  try {
    out.condition = op_norm(v) * op_norm(solve(v, ComplexMatrix::identity(n)));
  } catch (const SingularMatrixError&) {
    out.condition = std::numeric_limits<double>::infinity();
  }
  return out;
}

QuadratureRule gauss_jacobi(std::size_t n, double a, double b) {
  if (n == 0) throw InputError("gauss_jacobi: need at least one node");
  if (!(a > -1.0 && b > -1.0)) throw InputError("gauss_jacobi: exponents must exceed -1");
  // Jacobi matrix on [-1, 1] for (1 - s)^a (1 + s)^b.
  const double ab = a + b;
  std::vector<double> d(n), e(n, 0.0), z(n, 0.0);
  d[0] = (b - a) / (ab + 2.0);
  for (std::size_t k = 1; k < n; ++k) {
    const double kk = static_cast<double>(k);
    const double t = 2.0 * kk + ab;
    d[k] = (b * b - a * a) / (t * (t + 2.0));
    double b2;
    if (k == 1) {
      b2 = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      b2 = 4.0 * kk * (kk + a) * (kk + b) * (kk + ab) / (t * t * (t + 1.0) * (t - 1.0));
    }
    e[k - 1] = std::sqrt(b2);
  }
  z[0] = 1.0;
  tridiagonal_ql(d, e, z);
  // Mass of the weight on [0, 1] with u = (1 + s)/2: B(a + 1, b + 1).
  const double mu0 = std::exp(std::lgamma(a + 1.0) + std::lgamma(b + 1.0) - std::lgamma(ab + 2.0));
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return d[i] < d[j]; });
  QuadratureRule rule;
  for (std::size_t i : order) {
    rule.nodes.push_back(0.5 * (1.0 + d[i]));
    rule.weights.push_back(mu0 * z[i] * z[i]);
  }
  return rule;
}

PowerResult power_spectral(const ComplexMatrix& x, double alpha, const Tolerances& tol) {
  require_accretive(x, "power_spectral", tol);
  const std::size_t n = x.rows();
  const double xnorm = op_norm(x);
  PowerResult out;
  out.method = PowerMethod::spectral;
  if (xnorm == 0.0) {
    out.value = ComplexMatrix(n);
    return out;
  }
  const auto eig = eigen_general(x);
  if (!(eig.condition <= kConditionCap)) throw DefectiveMatrixError(eig.condition);
  std::vector<cplx> f(n);
  for (std::size_t k = 0; k < n; ++k) {
    const cplx lam = eig.values[k];
    f[k] = std::abs(lam) <= 1e-12 * xnorm ? cplx(0.0) : std::exp(alpha * std::log(lam));
  }
  // value = V F V^{-1} = (V^{-*} (V F)^*)^*.
  const ComplexMatrix vf = eig.vectors * ComplexMatrix::diagonal(f);
  out.value = solve(eig.vectors.adjoint(), vf.adjoint()).adjoint();
  out.est_error = eig.condition * kEps * std::max(1.0, op_norm(out.value)) * static_cast<double>(n);
  return out;
}

PowerResult power_balakrishnan(const ComplexMatrix& x, double r, int nodes, const Tolerances& tol) {
  if (!(r > 0.0 && r < 1.0)) throw PreconditionError("power_balakrishnan: r must lie in (0, 1)");
  if (nodes < 16) throw InputError("power_balakrishnan: need at least 16 nodes");
  require_accretive(x, "power_balakrishnan", tol);
  const std::size_t n = x.rows();
  const ComplexMatrix id = ComplexMatrix::identity(n);
  const double scale = std::sin(r * std::numbers::pi) / std::numbers::pi;
  auto integrate = [&](int count) {
    const auto rule = gauss_jacobi(static_cast<std::size_t>(count), -r, r - 1.0);
    ComplexMatrix sum(n);
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      const double u = rule.nodes[k];
      sum += rule.weights[k] * solve(u * id + (1.0 - u) * x, x);
    }
    return sum * scale;
  };
  PowerResult out;
  out.method = PowerMethod::balakrishnan;
  out.nodes_or_terms = nodes;
  out.value = integrate(nodes);
  out.est_error = op_norm(out.value - integrate(nodes / 2));
  out.certified = !(min_real_eig(x) <= tol.psd_slack && out.est_error > 1e-6);
  return out;
}

PowerResult root_series(const ComplexMatrix& x, int n, int terms, const Tolerances& tol) {
  require_square(x, "root_series");
  if (n < 2) throw PreconditionError("root_series: n must be at least 2");
  if (terms < 1) throw InputError("root_series: need at least one term");
  const std::size_t dim = x.rows();
  const ComplexMatrix id = ComplexMatrix::identity(dim);
  const ComplexMatrix d = id - x;
  if (op_norm(d) > 1.0 + tol.eq_tol) throw PreconditionError("root_series: requires ||I - x|| <= 1");
  const double p = 1.0 / n;
  ComplexMatrix sum = id;
  ComplexMatrix dk = id;
  double coeff = 1.0;  // binom(p, k) (-1)^k
  double used = 0.0;
  for (int k = 1; k <= terms; ++k) {
    coeff *= -(p - (k - 1)) / k;
    dk = dk * d;
    sum += coeff * dk;
    used += std::abs(coeff);
  }
  PowerResult out;
  out.value = sum;
  out.method = PowerMethod::series;
  out.nodes_or_terms = terms;
  out.est_error = std::max(0.0, 1.0 - used);
  return out;
}

PowerResult power(const ComplexMatrix& x, double alpha, const Tolerances& tol) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw PreconditionError("power: alpha must be positive");
  require_accretive(x, "power", tol);
  const double whole = std::floor(alpha);
  const double frac = alpha - whole;
  const auto m = static_cast<unsigned>(whole);
  if (frac <= 1e-15) {
    PowerResult out;
    out.value = int_power(x, m);
    return out;
  }
  PowerResult out;
  try {
    out = power_spectral(x, frac, tol);
  } catch (const DefectiveMatrixError&) {
    out = power_balakrishnan(x, frac, 128, tol);
  }
  if (m > 0) out.value = int_power(x, m) * out.value;
  return out;
}

double vav_identity_check(const ComplexMatrix& a, const ComplexMatrix& v, double r, const Tolerances& tol) {
  require_accretive(a, "vav_identity_check", tol);
  require_square(v, "vav_identity_check", a.rows());
  const bool integer = r >= 1.0 && std::floor(r) == r;
  if (!integer && !(r > 0.0 && r < 1.0)) {
    throw PreconditionError("vav_identity_check: r must lie in (0, 1) or be a positive integer");
  }
  const ComplexMatrix s = support_projection(a, ProjectionMethod::oracle, tol).proj;
  if (op_norm(v.adjoint() * v - s) > 1e-7) throw PreconditionError("vav_identity_check: v*v differs from s(a)");
  const ComplexMatrix lhs = power(v * a * v.adjoint(), r, tol).value;
  const ComplexMatrix rhs = v * power(a, r, tol).value * v.adjoint();
  return op_norm(lhs - rhs);
}

std::vector<double> root_monotonicity_report(const ComplexMatrix& x, int big_n, const Tolerances& tol) {
  if (big_n < 2 || big_n > 12) throw PreconditionError("root_monotonicity_report: N must lie in [2, 12]");
  require_accretive(x, "root_monotonicity_report", tol);
  std::vector<ComplexMatrix> re;
  for (int k = 1; k <= big_n; ++k) re.push_back(real_part(power(x, 1.0 / k, tol).value));
  std::vector<double> margins;
  for (int k = 1; k < big_n; ++k) margins.push_back(min_eig(re[k] - re[k - 1]));
  return margins;
}

RescaledRoots rescaled_root_check(const ComplexMatrix& x, const Tolerances& tol) {
  require_accretive(x, "rescaled_root_check", tol);
  if (op_norm(x) == 0.0) throw PreconditionError("rescaled_root_check: x must be nonzero");
  RescaledRoots out;
  const double re_norm = op_norm(real_part(power(x, 0.5, tol).value));
  out.c = 4.0 * re_norm * re_norm;
  const ComplexMatrix z = x / out.c;
  std::vector<ComplexMatrix> re;
  for (int m = 2; m <= 8; ++m) {
    const ComplexMatrix root = power(z, 1.0 / m, tol).value;
    if (m == 2) {
      const auto f = f_membership(root, tol);
      out.root_in_half_f = f.in_half_f;
      out.half_f_gap = f.half_f_gap;
    }
    re.push_back(real_part(root));
  }
  for (std::size_t k = 1; k < re.size(); ++k) out.margins.push_back(min_eig(re[k] - re[k - 1]));
  return out;
}

double holder_check(const ComplexMatrix& a, const ComplexMatrix& b, double alpha, int samples,
                    std::uint64_t seed, const Tolerances& tol) {
  require_accretive(a, "holder_check", tol);
  require_accretive(b, "holder_check", tol);
  require_square(b, "holder_check", a.rows());
  if (op_norm(commutator(a, b)) > 1e-8) throw PreconditionError("holder_check: a and b do not commute");
  if (!(alpha > 0.0 && alpha < 1.0)) throw PreconditionError("holder_check: alpha must lie in (0, 1)");
  const std::size_t n = a.rows();
  const ComplexMatrix diff_pow = power(a, alpha, tol).value - power(b, alpha, tol).value;
  const ComplexMatrix diff = a - b;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  double best = 0.0;
  for (int s = 0; s < samples; ++s) {
    ComplexMatrix z(n, 1);
    for (auto& c : z.entries()) c = cplx(gauss(rng), gauss(rng));
    z = z / z.frobenius_norm();
    const double den = (diff * z).frobenius_norm();
    if (den <= 1e-8) continue;
    best = std::max(best, (diff_pow * z).frobenius_norm() / std::pow(den, alpha));
  }
  return best;
}

DiskOrder disk_order_check(const std::vector<cplx>& f, const std::vector<cplx>& g, const ComplexMatrix& x,
                           const Tolerances& tol) {
  require_square(x, "disk_order_check");
  const ComplexMatrix id = ComplexMatrix::identity(x.rows());
  const ComplexMatrix w = id - x;
  if (op_norm(w) > 1.0 + tol.eq_tol) throw PreconditionError("disk_order_check: requires ||I - x|| <= 1");
  DiskOrder out;
  out.premise_margin = std::numeric_limits<double>::infinity();
  constexpr int kSamples = 4096;
  for (int k = 0; k < kSamples; ++k) {
    const cplx z = std::polar(1.0, 2.0 * std::numbers::pi * k / kSamples);
    out.premise_margin = std::min(out.premise_margin, (horner(g, z) - horner(f, z)).real());
  }
  out.conclusion_margin = min_real_eig(horner(g, w) - horner(f, w));
  out.implication_holds = out.premise_margin < -1e-12 || out.conclusion_margin >= -tol.psd_slack;
  return out;
}

}  // namespace realpos
