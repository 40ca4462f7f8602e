#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "realpos/matrix.hpp"

namespace realpos {

/// Eigendecomposition x = V diag(values) V^{-1} of a general square matrix
/// (Hessenberg reduction, shifted complex QR, Schur back-substitution).
struct GeneralEigen {
  std::vector<cplx> values;
  ComplexMatrix vectors;  // unit-norm columns
  double condition = 0;   // ||V|| ||V^{-1}||, infinite when V is singular
};

GeneralEigen eigen_general(const ComplexMatrix& x);

/// Gauss-Jacobi rule on [0, 1] for the weight (1 - u)^a u^b, a, b > -1.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

QuadratureRule gauss_jacobi(std::size_t n, double a, double b);

enum class PowerMethod { spectral, balakrishnan, series };
std::string_view to_string(PowerMethod m);

struct PowerResult {
  ComplexMatrix value;
  PowerMethod method = PowerMethod::spectral;
  double est_error = 0;
  int nodes_or_terms = 0;
  /// False when the quadrature estimate is too coarse to vouch for a nearly
  /// singular input.
  bool certified = true;
};

/// V diag(lambda^alpha) V^{-1} on the principal branch. Throws
/// DefectiveMatrixError when cond(V) > 1e8.
PowerResult power_spectral(const ComplexMatrix& x, double alpha, const Tolerances& tol = {});

/// (sin r pi / pi) int_0^inf t^{r-1} (t + x)^{-1} x dt by Gauss-Jacobi
/// quadrature after t = u/(1-u). est_error compares with half the nodes.
PowerResult power_balakrishnan(const ComplexMatrix& x, double r, int nodes = 128, const Tolerances& tol = {});

/// Binomial series for x^{1/n} around I; est_error is the coefficient tail.
PowerResult root_series(const ComplexMatrix& x, int n, int terms = 200, const Tolerances& tol = {});

/// x^alpha for alpha > 0: integer part by repeated products, fractional part
/// spectrally with quadrature fallback.
PowerResult power(const ComplexMatrix& x, double alpha, const Tolerances& tol = {});

/// ||(v a v*)^r - v a^r v*||. Requires a accretive, v*v = s(a) within 1e-7 and
/// r in (0, 1) or a positive integer.
double vav_identity_check(const ComplexMatrix& a, const ComplexMatrix& v, double r, const Tolerances& tol = {});

/// m_n = lambda_min(Re x^{1/(n+1)} - Re x^{1/n}) for n = 1 .. big_n - 1.
std::vector<double> root_monotonicity_report(const ComplexMatrix& x, int big_n, const Tolerances& tol = {});

struct RescaledRoots {
  double c = 0;  // (2 ||Re x^{1/2}||)^2
  bool root_in_half_f = false;
  double half_f_gap = 0;        // of (x/c)^{1/2}
  std::vector<double> margins;  // consecutive roots of x/c, m = 2..8
};

RescaledRoots rescaled_root_check(const ComplexMatrix& x, const Tolerances& tol = {});

/// Largest ||(a^alpha - b^alpha) z|| / ||(a - b) z||^alpha over random unit z
/// with denominator above 1e-8; 0 when no sample qualifies.
double holder_check(const ComplexMatrix& a, const ComplexMatrix& b, double alpha, int samples,
                    std::uint64_t seed, const Tolerances& tol = {});

struct DiskOrder {
  double premise_margin = 0;     // min Re((g - f)(e^{i theta})) over the circle
  double conclusion_margin = 0;  // lambda_min(Re(g(I - x) - f(I - x)))
  bool implication_holds = true;
};

/// Polynomials are coefficient lists, constant term first. Requires
/// ||I - x|| <= 1 + eq_tol.
DiskOrder disk_order_check(const std::vector<cplx>& f, const std::vector<cplx>& g, const ComplexMatrix& x,
                           const Tolerances& tol = {});

}  // namespace realpos
