#include "realpos/interp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "realpos/cones.hpp"
#include "realpos/projections.hpp"
#include "realpos/random.hpp"

namespace realpos {

namespace {

using Checks = std::vector<PostCheck>;
using Verifier = std::function<Checks(const ComplexMatrix&)>;

const Tolerances kTol{};

void require_dim(const MatrixAlgebra& a, const ComplexMatrix& m, const char* what) {
  if (m.rows() != a.ambient_dim || m.cols() != a.ambient_dim) {
    throw DimensionError(std::string(what) + ": matrix size does not match the algebra");
  }
}

ComplexMatrix require_unit(const MatrixAlgebra& a, const char* what) {
  const auto e = unit_projection(a);
  if (!e) throw PreconditionError(std::string(what) + ": the algebra has no unit projection");
  return *e;
}

void require_projection(const ComplexMatrix& p, const char* what) {
  if (!is_projection(p, 1e-8)) throw PreconditionError(std::string(what) + " is not a projection");
}

void require_psd(const ComplexMatrix& b, const char* what) {
  if ((b - b.adjoint()).max_abs() > kTol.eq_tol * std::max(1.0, b.max_abs()) || min_eig(b) < -kTol.psd_slack) {
    throw PreconditionError(std::string(what) + " is not positive semidefinite");
  }
}

void require_in(const MatrixAlgebra& a, const ComplexMatrix& m, const char* what) {
  if (!contains(a, m).holds) throw PreconditionError(std::string(what) + " is not in the algebra");
}

// Orthonormal columns spanning the range of the unit projection (I when
// there is none): constraints are posed on the corner where A lives.
ComplexMatrix corner(const MatrixAlgebra& a) {
  const auto e = unit_projection(a);
  return e ? range_isometry(*e) : ComplexMatrix::identity(a.ambient_dim);
}

// ||I - 2a|| <= 1 on the corner W.
NormCap half_f_cap(const ComplexMatrix& w, std::string label = "||I - 2a|| <= 1") {
  const std::size_t k = w.cols();
  return {LinearMap::sandwich(-2.0 * w.adjoint(), w), ComplexMatrix::identity(k), 1.0, std::move(label)};
}

// Re(e^{+-i phi} a) >= 0 with phi = pi/2 - rho, tan(rho) = eps/2: the
// numerical range lies in a sector of half-angle rho.
std::vector<PsdFloor> sector_floors(const ComplexMatrix& w, double eps) {
  const double phi = std::numbers::pi / 2 - std::atan(0.5 * eps);
  std::vector<PsdFloor> out;
  for (double sgn : {1.0, -1.0}) {
    out.push_back({LinearMap::sandwich(std::polar(1.0, sgn * phi) * w.adjoint(), w),
                   ComplexMatrix(w.cols()),
                   sgn > 0 ? "sector (+)" : "sector (-)"});
  }
  return out;
}

// a u - a (or u a - a when on_left).
LinearMap absorb(const ComplexMatrix& u, bool on_left) {
  const std::size_t n = u.rows();
  const auto id = ComplexMatrix::identity(n);
  LinearMap m = on_left ? LinearMap::sandwich(u, id) : LinearMap::sandwich(id, u);
  m.add(-1.0 * id, id);
  return m;
}

PostCheck membership_check(const MatrixAlgebra& a, const ComplexMatrix& x, double tol, const char* label = "in A") {
  return {label, contains(a, x).margin, tol};
}

PostCheck half_f_check(const ComplexMatrix& x, double tol, const char* label = "||I - 2a|| - 1") {
  return {label, op_norm(ComplexMatrix::identity(x.rows()) - 2.0 * x) - 1.0, tol};
}

// Strict inequality ||Im a|| < eps, checked with a relative margin.
PostCheck near_positive_check(const ComplexMatrix& x, double eps) {
  return {"||Im a||", op_norm(imag_part(x)), eps * (1.0 - 1e-12)};
}

bool all_pass(const Checks& c) {
  return std::all_of(c.begin(), c.end(), [](const PostCheck& k) { return k.passed(); });
}

// Engine attempts with fresh seeds, then the warm start when allowed.
InterpResult drive(const FeasibilityProblem& problem, const Verifier& verify, const std::optional<ComplexMatrix>& witness,
                   const InterpOptions& opts, std::function<ComplexMatrix(const ComplexMatrix&)> extract = {}) {
  if (opts.retries < 1) throw InputError("interp: retries must be at least 1");
  const Rng root(opts.seed);
  InterpResult res;
  auto run = [&](SolverOptions so, InterpPath path) {
    ++res.attempts;
    res.engine = solve_feasibility(problem, so);
    res.value = extract ? extract(res.engine.value) : res.engine.value;
    res.checks = verify(res.engine.value);
    res.path = path;
    res.verified = res.engine.verdict == SolveStatus::feasible && all_pass(res.checks);
    return res.verified;
  };
  for (int k = 0; k < opts.retries; ++k) {
    SolverOptions so;
    so.solver_tol = opts.solver_tol;
    so.dykstra = opts.dykstra;
    so.seed = root.split(static_cast<std::uint64_t>(k)).seed();
    if (k > 0) {
      Rng r = root.split(static_cast<std::uint64_t>(k) + 1000);
      so.start = 0.5 * gen_element(problem.algebra, r);
    }
    if (run(so, InterpPath::engine)) return res;
  }
  if (opts.allow_warm_start && witness) {
    SolverOptions so;
    so.solver_tol = opts.solver_tol;
    so.dykstra = opts.dykstra;
    so.seed = root.split(99).seed();
    so.start = *witness;
    run(so, InterpPath::warm_start);
  }
  return res;
}

ComplexMatrix inv_sqrt_psd(const ComplexMatrix& h) {
  const auto e = herm_eig(h);
  const std::size_t n = h.rows();
  ComplexMatrix out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const ComplexMatrix v = e.vectors.column(k);
    out += (1.0 / std::sqrt(e.values[k])) * (v * v.adjoint());
  }
  return out;
}

}  // namespace

ConvexRegion::ConvexRegion(std::vector<cplx> vertices) : vertices_(std::move(vertices)) {
  const std::size_t m = vertices_.size();
  if (m < 3) throw InputError("ConvexRegion: at least 3 vertices are required");
  double scale = 0.0;
  for (const auto& v : vertices_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw InputError("ConvexRegion: non-finite vertex");
    scale = std::max(scale, std::abs(v));
  }
  const double eps = 1e-12 * std::max(1.0, scale * scale);
  double area = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const cplx a = vertices_[k], b = vertices_[(k + 1) % m], c = vertices_[(k + 2) % m];
    area += a.real() * b.imag() - b.real() * a.imag();
    const cplx d1 = b - a, d2 = c - b;
    if (std::abs(d1) <= 1e-12 * std::max(1.0, scale)) throw InputError("ConvexRegion: repeated vertex");
    if (d1.real() * d2.imag() - d1.imag() * d2.real() < -eps) {
      throw InputError("ConvexRegion: vertices are not in counterclockwise convex order");
    }
  }
  if (0.5 * area <= eps) throw InputError("ConvexRegion: vertices are collinear (the region is a segment)");
  for (std::size_t k = 0; k < m; ++k) {
    const cplx d = vertices_[(k + 1) % m] - vertices_[k];
    const cplx normal = cplx(d.imag(), -d.real()) / std::abs(d);
    theta_.push_back(std::arg(normal));
    h_.push_back((std::conj(normal) * vertices_[k]).real());
  }
}

bool ConvexRegion::contains(cplx z, double slack) const {
  for (std::size_t k = 0; k < h_.size(); ++k)
    if ((std::polar(1.0, -theta_[k]) * z).real() > h_[k] + slack) return false;
  return true;
}

double ConvexRegion::range_excess(const ComplexMatrix& t) const {
  require_square(t, "ConvexRegion::range_excess");
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < h_.size(); ++k) {
    worst = std::max(worst, max_eig(real_part(std::polar(1.0, -theta_[k]) * t)) - h_[k]);
  }
  return worst;
}

std::string_view to_string(InterpPath p) {
  switch (p) {
    case InterpPath::engine: return "engine";
    case InterpPath::warm_start: return "warm-start";
    case InterpPath::fast_path: return "fast-path";
  }
  return "unknown";
}

double InterpResult::worst_check() const {
  double w = -std::numeric_limits<double>::infinity();
  for (const auto& c : checks) w = std::max(w, c.value - c.limit);
  return w;
}

InterpResult dominate(const MatrixAlgebra& a, const ComplexMatrix& b, double eps, const InterpOptions& opts) {
  require_dim(a, b, "dominate");
  const ComplexMatrix e = require_unit(a, "dominate");
  require_psd(b, "dominate: b");
  if (!contains(cstar_envelope(a), b).holds) throw PreconditionError("dominate: b is not in C*(A)");
  const double bn = op_norm(b);
  if (bn >= 1.0 - kTol.eq_tol) throw PreconditionError("dominate: requires ||b|| < 1");
  if (!(eps > 0.0)) throw InputError("dominate: eps must be positive");

  const ComplexMatrix w = corner(a);
  FeasibilityProblem p{a, {}, {}, {half_f_cap(w)}};
  p.floors.push_back({LinearMap::sandwich(w.adjoint(), w), -1.0 * (w.adjoint() * b * w), "Re a - b >= 0"});
  for (auto& f : sector_floors(w, eps)) p.floors.push_back(std::move(f));

  const double tol = opts.solver_tol;
  auto verify = [&](const ComplexMatrix& x) {
    return Checks{membership_check(a, x, tol), half_f_check(x, tol),
                  {"-lambda_min(Re a - b)", -min_eig(real_part(x) - b), tol}, near_positive_check(x, eps)};
  };
  return drive(p, verify, 0.5 * (1.0 + bn) * e, opts);
}

InterpResult decompose(const MatrixAlgebra& a, const ComplexMatrix& b, const InterpOptions& opts) {
  require_dim(a, b, "decompose");
  const ComplexMatrix e = require_unit(a, "decompose");
  require_in(a, b, "decompose: b");
  if (op_norm(b) >= 1.0 - kTol.eq_tol) throw PreconditionError("decompose: requires ||b|| < 1");

  const std::size_t n = a.ambient_dim;
  const MatrixAlgebra pair = direct_sum(a, a);
  ComplexMatrix j1(2 * n, n), j2(2 * n, n);
  j1.set_block(0, 0, ComplexMatrix::identity(n));
  j2.set_block(n, 0, ComplexMatrix::identity(n));
  const ComplexMatrix w = corner(a);

  LinearMap diff = LinearMap::sandwich(j1.adjoint(), j1);
  diff.add(-1.0 * j2.adjoint(), j2);
  FeasibilityProblem p{pair, {{diff, b, "x - y = b"}}, {}, {}};
  p.caps.push_back(half_f_cap(j1 * w, "||I - 2x|| <= 1"));
  p.caps.push_back(half_f_cap(j2 * w, "||I - 2y|| <= 1"));

  const double tol = opts.solver_tol;
  auto split = [n](const ComplexMatrix& s) { return std::pair{s.block(0, 0, n, n), s.block(n, n, n, n)}; };
  auto verify = [&](const ComplexMatrix& s) {
    const auto [x, y] = split(s);
    return Checks{membership_check(a, x, tol, "x in A"), membership_check(a, y, tol, "y in A"),
                  {"block off-diagonal", std::max(s.block(0, n, n, n).max_abs(), s.block(n, 0, n, n).max_abs()), tol},
                  half_f_check(x, tol, "||I - 2x|| - 1"), half_f_check(y, tol, "||I - 2y|| - 1"),
                  {"||b - (x - y)||", op_norm(b - (x - y)), tol}};
  };
  ComplexMatrix witness(2 * n);
  witness.set_block(0, 0, 0.5 * (e + b));
  witness.set_block(n, n, 0.5 * (e - b));
  auto res = drive(p, verify, witness, opts, [n](const ComplexMatrix& s) { return s.block(0, 0, n, n); });
  res.second = res.engine.value.block(n, n, n, n);
  return res;
}

InterpResult interp_np(const MatrixAlgebra& a, const ComplexMatrix& c, const InterpOptions& opts) {
  require_dim(a, c, "interp_np");
  const ComplexMatrix e = require_unit(a, "interp_np");
  require_psd(c, "interp_np: c");
  if (!contains(cstar_envelope(a), c).holds) throw PreconditionError("interp_np: c is not in C*(A)");
  const double cn = op_norm(c);
  if (cn >= 1.0 - kTol.eq_tol) throw PreconditionError("interp_np: requires ||c|| < 1");

  const std::size_t n = a.ambient_dim;
  const ComplexMatrix w = corner(a);
  const std::size_t k = w.cols();
  // |1 - a|^2 <= 1 - c  <=>  ||(I - a)(I - c)^{-1/2}|| <= 1 on the corner.
  const ComplexMatrix r = inv_sqrt_psd(ComplexMatrix::identity(k) - w.adjoint() * c * w);
  FeasibilityProblem p{a, {}, {}, {half_f_cap(w)}};
  p.caps.push_back({LinearMap::sandwich(-1.0 * w.adjoint(), w * r), r, 1.0, "|1 - a|^2 <= 1 - c"});
  for (auto& f : sector_floors(w, opts.near_eps)) p.floors.push_back(std::move(f));

  const double tol = opts.solver_tol;
  auto verify = [&](const ComplexMatrix& x) {
    const auto id = ComplexMatrix::identity(n);
    ComplexMatrix block(2 * n);
    block.set_block(0, 0, id - c);
    block.set_block(0, n, (id - x).adjoint());
    block.set_block(n, 0, id - x);
    block.set_block(n, n, id);
    return Checks{membership_check(a, x, tol), half_f_check(x, tol), near_positive_check(x, opts.near_eps),
                  {"-lambda_min([[I - c, (I - a)*], [I - a, I]])", -min_eig(block), tol}};
  };
  return drive(p, verify, (1.0 - std::sqrt(1.0 - cn)) * e, opts);
}

InterpResult urysohn_interpolate(const MatrixAlgebra& a, const ComplexMatrix& q, const ComplexMatrix& u, double eps,
                                 const InterpOptions& opts) {
  require_dim(a, q, "urysohn_interpolate");
  require_dim(a, u, "urysohn_interpolate");
  require_projection(q, "urysohn_interpolate: q");
  require_projection(u, "urysohn_interpolate: u");
  require_in(a, q, "urysohn_interpolate: q");
  if (min_eig(real_part(u - q)) < -kTol.psd_slack) throw PreconditionError("urysohn_interpolate: requires q <= u");
  if (!(eps > 0.0)) throw InputError("urysohn_interpolate: eps must be positive");

  const std::size_t n = a.ambient_dim;
  const auto id = ComplexMatrix::identity(n);
  const bool u_in_a = contains(a, u).holds;
  const ComplexMatrix w = corner(a);
  FeasibilityProblem p{a,
                       {{LinearMap::right(q), q, "aq = q"}, {LinearMap::left(q), q, "qa = q"}},
                       {},
                       {half_f_cap(w)}};
  if (u_in_a) {
    p.equalities.push_back({absorb(u, false), ComplexMatrix(n), "au = a"});
    p.equalities.push_back({absorb(u, true), ComplexMatrix(n), "ua = a"});
  } else {
    p.caps.push_back({LinearMap::right(id - u), {}, 0.5 * eps, "||a(I - u)|| <= eps/2"});
    p.caps.push_back({LinearMap::left(id - u), {}, 0.5 * eps, "||(I - u)a|| <= eps/2"});
  }
  for (auto& f : sector_floors(w, opts.near_eps)) p.floors.push_back(std::move(f));

  const double tol = opts.solver_tol;
  auto verify = [&](const ComplexMatrix& x) {
    Checks c{membership_check(a, x, tol), half_f_check(x, tol), {"||aq - q||", op_norm(x * q - q), tol},
             {"||qa - q||", op_norm(q * x - q), tol}, near_positive_check(x, opts.near_eps)};
    if (u_in_a) {
      c.push_back({"||au - a||", op_norm(x * u - x), tol});
      c.push_back({"||ua - a||", op_norm(u * x - x), tol});
    } else {
      c.push_back({"||a(I - u)||", op_norm(x * (id - u)), eps * (1.0 - 1e-12)});
      c.push_back({"||(I - u)a||", op_norm((id - u) * x), eps * (1.0 - 1e-12)});
    }
    return c;
  };
  return drive(p, verify, q, opts);
}

InterpResult strict_urysohn(const MatrixAlgebra& a, const ComplexMatrix& q, const ComplexMatrix& p,
                            const InterpOptions& opts) {
  require_dim(a, q, "strict_urysohn");
  require_dim(a, p, "strict_urysohn");
  require_projection(q, "strict_urysohn: q");
  require_projection(p, "strict_urysohn: p");
  require_in(a, q, "strict_urysohn: q");
  require_in(a, p, "strict_urysohn: p");
  if (min_eig(real_part(p - q)) < -kTol.psd_slack) throw PreconditionError("strict_urysohn: requires q <= p");

  const std::size_t n = a.ambient_dim;
  const auto id = ComplexMatrix::identity(n);
  const double tol = opts.solver_tol;
  constexpr double kProjTol = 1e-5;
  // Loose slack so solver-level violations of accretivity do not abort the
  // projection checks; the checks themselves are at kProjTol.
  Tolerances loose;
  loose.psd_slack = 1e-5;
  loose.eq_tol = 1e-6;

  auto verify = [&](const ComplexMatrix& x) {
    Checks c{membership_check(a, x, tol), half_f_check(x, tol),
             {"||xq - q||", op_norm(x * q - q), tol},  {"||qx - q||", op_norm(q * x - q), tol},
             {"||xp - x||", op_norm(x * p - x), tol},  {"||px - x||", op_norm(p * x - x), tol}};
    auto proj_check = [&](const char* label, auto&& compute, const ComplexMatrix& expected) {
      try {
        c.push_back({label, op_norm(compute() - expected), kProjTol});
      } catch (const Error&) {
        c.push_back({label, std::numeric_limits<double>::infinity(), kProjTol});
      }
    };
    proj_check("||u(x) - q||", [&] { return peak_projection(x, ProjectionMethod::iterative, loose).proj; }, q);
    proj_check("||s(x) - p||", [&] { return support_projection(x, ProjectionMethod::oracle, loose).proj; }, p);
    proj_check("||s(x(I - x)) - (p - q)||",
               [&] { return support_projection(x * (id - x), ProjectionMethod::oracle, loose).proj; }, p - q);
    return c;
  };

  const ComplexMatrix witness = 0.5 * (p + q);
  if (opts.fast_path) {
    InterpResult res;
    res.value = witness;
    res.checks = verify(witness);
    res.path = InterpPath::fast_path;
    res.attempts = 1;
    res.verified = all_pass(res.checks);
    if (res.verified) return res;
  }

  const ComplexMatrix w = corner(a);
  const ComplexMatrix wpq = range_isometry(real_part(p - q));
  InterpResult last;
  double margin = 0.25;
  for (int k = 0; k < opts.retries; ++k, margin *= 0.4) {
    FeasibilityProblem prob{a,
                            {{LinearMap::right(q), q, "xq = q"},
                             {LinearMap::left(q), q, "qx = q"},
                             {absorb(p, false), ComplexMatrix(n), "xp = x"},
                             {absorb(p, true), ComplexMatrix(n), "px = x"}},
                            {},
                            {half_f_cap(w, "||I - 2x|| <= 1"),
                             {LinearMap::identity(n), -1.0 * q, 1.0 - margin, "||x - q|| <= 1 - mu"}}};
    if (wpq.cols() > 0) {
      prob.floors.push_back({LinearMap::sandwich(wpq.adjoint(), wpq), -margin * ComplexMatrix::identity(wpq.cols()),
                             "(p - q) Re x (p - q) >= mu (p - q)"});
    }
    InterpOptions o = opts;
    o.seed = Rng(opts.seed).split(static_cast<std::uint64_t>(k)).seed();
    o.retries = 1;
    last = drive(prob, verify, witness, o);
    last.attempts += k;
    if (last.verified) return last;
  }
  std::string worst = "none";
  double excess = -std::numeric_limits<double>::infinity();
  for (const auto& c : last.checks) {
    if (c.value - c.limit > excess) {
      excess = c.value - c.limit;
      worst = c.label + " = " + std::to_string(c.value);
    }
  }
  throw VerificationError("strict_urysohn: no interpolant passed peak/support verification (worst: " + worst + ")");
}

InterpResult peak_interpolate(const MatrixAlgebra& a, const ComplexMatrix& q, const ComplexMatrix& b,
                              const InterpOptions& opts) {
  require_dim(a, q, "peak_interpolate");
  require_dim(a, b, "peak_interpolate");
  require_projection(q, "peak_interpolate: q");
  require_in(a, b, "peak_interpolate: b");
  const std::size_t n = a.ambient_dim;
  const auto id = ComplexMatrix::identity(n);
  if (op_norm(b * q - q * b) > kTol.eq_tol) throw PreconditionError("peak_interpolate: requires bq = qb");
  const ComplexMatrix bq = b * q;
  if (op_norm(bq) > 1.0 + kTol.eq_tol) throw PreconditionError("peak_interpolate: requires ||bq|| <= 1");
  if (op_norm((id - 2.0 * b) * q) > 1.0 + kTol.eq_tol) {
    throw PreconditionError("peak_interpolate: requires ||(I - 2b)q|| <= 1");
  }

  const ComplexMatrix w = corner(a);
  FeasibilityProblem p{a,
                       {{LinearMap::right(q), bq, "gq = bq"}, {LinearMap::left(q), bq, "qg = bq"}},
                       {},
                       {half_f_cap(w, "||I - 2g|| <= 1")}};
  const double tol = opts.solver_tol;
  auto verify = [&](const ComplexMatrix& g) {
    return Checks{membership_check(a, g, tol), half_f_check(g, tol, "||I - 2g|| - 1"),
                  {"||gq - bq||", op_norm(g * q - bq), tol}, {"||qg - bq||", op_norm(q * g - bq), tol}};
  };
  std::optional<ComplexMatrix> witness;
  if (const auto e = unit_projection(a); e && contains(a, q).holds) {
    const ComplexMatrix cand = bq + 0.5 * (*e - q);
    if (contains(a, cand).holds) witness = cand;
  }
  return drive(p, verify, witness, opts);
}

InterpResult tietze_lift(const MatrixAlgebra& a, const ComplexMatrix& q, const ComplexMatrix& b,
                         const ConvexRegion& region, const InterpOptions& opts) {
  require_dim(a, q, "tietze_lift");
  require_dim(a, b, "tietze_lift");
  require_projection(q, "tietze_lift: q");
  require_in(a, b, "tietze_lift: b");
  if (op_norm(b * q - q * b) > kTol.eq_tol) throw PreconditionError("tietze_lift: requires bq = qb");
  const ComplexMatrix bq = b * q;
  if (op_norm(bq) > 1.0 + kTol.eq_tol) throw PreconditionError("tietze_lift: requires ||bq|| <= 1");
  const ComplexMatrix wq = range_isometry(real_part(q));
  if (wq.cols() > 0 && region.range_excess(wq.adjoint() * b * wq) > kTol.psd_slack) {
    throw PreconditionError("tietze_lift: the numerical range of qbq is not inside E");
  }
  const auto e = unit_projection(a);
  if (!e && !region.contains(0.0)) throw InputError("tietze_lift: 0 must lie in E when the algebra has no unit");

  const ComplexMatrix w = corner(a);
  const std::size_t k = w.cols();
  FeasibilityProblem p{a,
                       {{LinearMap::right(q), bq, "gq = bq"}, {LinearMap::left(q), bq, "qg = bq"}},
                       {},
                       {{LinearMap::identity(a.ambient_dim), {}, 1.0, "||g|| <= 1"}}};
  for (std::size_t j = 0; j < region.offsets().size(); ++j) {
    p.floors.push_back({LinearMap::sandwich(-std::polar(1.0, -region.normal_angles()[j]) * w.adjoint(), w),
                        region.offsets()[j] * ComplexMatrix::identity(k), "half-plane " + std::to_string(j)});
  }
  const double tol = opts.solver_tol;
  auto verify = [&](const ComplexMatrix& g) {
    return Checks{membership_check(a, g, tol), {"||g|| - 1", op_norm(g) - 1.0, tol},
                  {"||gq - bq||", op_norm(g * q - bq), tol}, {"||qg - bq||", op_norm(q * g - bq), tol},
                  {"numerical range excess", region.range_excess(w.adjoint() * g * w), tol}};
  };
  std::optional<ComplexMatrix> witness;
  if (e && contains(a, q).holds) {
    cplx z = 0.0;
    if (wq.cols() > 0) {
      z = (wq.column(0).adjoint() * b * wq.column(0))(0, 0);
    } else {
      for (const auto& v : region.vertices()) z += v;
      z /= static_cast<double>(region.vertices().size());
      if (std::abs(z) > 1.0) z /= std::abs(z);
    }
    const ComplexMatrix cand = bq + z * (*e - q);
    if (contains(a, cand).holds) witness = cand;
  }
  return drive(p, verify, witness, opts);
}

}  // namespace realpos
