#pragma once

// Interpolation solvers: each theorem's unknown is posed as a feasibility
// problem, solved by the engine, and then re-verified from scratch.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "realpos/algebra.hpp"
#include "realpos/feasibility.hpp"
#include "realpos/matrix.hpp"

namespace realpos {

/// Compact convex polygon, vertices counterclockwise.
class ConvexRegion {
 public:
  /// Throws InputError for fewer than 3 vertices, collinear vertices (a
  /// segment), a clockwise or non-convex vertex order.
  explicit ConvexRegion(std::vector<cplx> vertices);

  const std::vector<cplx>& vertices() const { return vertices_; }
  /// Outward unit normal angle of edge k (from vertex k to k+1).
  const std::vector<double>& normal_angles() const { return theta_; }
  /// Offsets: z is inside iff Re(e^{-i theta_k} z) <= h_k for all k.
  const std::vector<double>& offsets() const { return h_; }

  bool contains(cplx z, double slack = 0.0) const;
  /// Largest violation max_k (lambda_max(Re(e^{-i theta_k} t)) - h_k); <= 0
  /// iff the numerical range of t lies in the region.
  double range_excess(const ComplexMatrix& t) const;

 private:
  std::vector<cplx> vertices_;
  std::vector<double> theta_;
  std::vector<double> h_;
};

struct InterpOptions {
  std::uint64_t seed = 0;
  double solver_tol = 1e-6;
  /// Engine attempts with fresh seeds before the closed-form fallback.
  int retries = 3;
  /// Warm-start the engine from a known witness when every plain attempt
  /// fails. The path taken is reported.
  bool allow_warm_start = true;
  bool dykstra = false;
  /// Bound on ||Im a|| for the nearly positive outputs.
  double near_eps = 1e-2;
  /// strict_urysohn only: try x = (p + q)/2 before the engine.
  bool fast_path = true;
};

/// One independent post-verification: passes iff value <= limit.
struct PostCheck {
  std::string label;
  double value = 0.0;
  double limit = 0.0;
  bool passed() const { return value <= limit; }
};

enum class InterpPath { engine, warm_start, fast_path };
std::string_view to_string(InterpPath p);

struct InterpResult {
  ComplexMatrix value;
  /// y of decompose; empty otherwise.
  std::optional<ComplexMatrix> second;
  FeasibilitySolution engine;
  std::vector<PostCheck> checks;
  InterpPath path = InterpPath::engine;
  int attempts = 0;
  /// Every post-check passed.
  bool verified = false;
  double worst_check() const;
};

/// a in A with ||I - 2a|| <= 1, Re a >= b and ||Im a|| < eps.
/// Requires A unital, b PSD in C*(A), ||b|| < 1.
InterpResult dominate(const MatrixAlgebra& a, const ComplexMatrix& b, double eps, const InterpOptions& opts = {});

/// x, y in the half-F set of A with x - y = b. Requires A unital, b in A,
/// ||b|| < 1.
InterpResult decompose(const MatrixAlgebra& a, const ComplexMatrix& b, const InterpOptions& opts = {});

/// a in the half-F set of A, nearly positive, with |1 - a|^2 <= 1 - c.
/// Requires A unital, c PSD in C*(A), ||c|| < 1.
InterpResult interp_np(const MatrixAlgebra& a, const ComplexMatrix& c, const InterpOptions& opts = {});

/// Half-F a with aq = qa = q, nearly positive. If u is in A: au = ua = a;
/// otherwise ||a(I - u)||, ||(I - u)a|| < eps.
InterpResult urysohn_interpolate(const MatrixAlgebra& a, const ComplexMatrix& q, const ComplexMatrix& u, double eps,
                                 const InterpOptions& opts = {});

/// Half-F x with peak projection q and support projection p (q <= p both in
/// A). Throws VerificationError if no attempt passes verification.
InterpResult strict_urysohn(const MatrixAlgebra& a, const ComplexMatrix& q, const ComplexMatrix& p,
                            const InterpOptions& opts = {});

/// Half-F g in A with gq = qg = bq.
InterpResult peak_interpolate(const MatrixAlgebra& a, const ComplexMatrix& q, const ComplexMatrix& b,
                              const InterpOptions& opts = {});

/// g in A with ||g|| <= 1, gq = qg = bq and numerical range in E. For
/// unital A with unit e, the range is taken in e M_n e.
InterpResult tietze_lift(const MatrixAlgebra& a, const ComplexMatrix& q, const ComplexMatrix& b,
                         const ConvexRegion& e, const InterpOptions& opts = {});

}  // namespace realpos
