#pragma once

#include <optional>
#include <vector>

#include "realpos/algebra.hpp"
#include "realpos/matrix.hpp"

namespace realpos {

/// x is accretive when Re x = (x + x*)/2 >= 0. margin = lambda_min(Re x).
Verdict is_accretive(const ComplexMatrix& x, const Tolerances& tol = {});

struct FMembership {
  bool in_f = false;       // ||I - x|| <= 1
  bool in_half_f = false;  // ||I - 2x|| <= 1
  double f_gap = 0;        // 1 - ||I - x||
  double half_f_gap = 0;   // 1 - ||I - 2x||
};

/// The unit is always the ambient identity I_n.
FMembership f_membership(const ComplexMatrix& x, const Tolerances& tol = {});

struct CCertificate {
  double value = 0;                // minimal C with x*x <= C (x + x*)
  double verification_margin = 0;  // lambda_min(C (x + x*) - x*x)
  double kernel_threshold = 0;     // eigenvalues of x + x* at or below this count as kernel
};

/// Minimal C >= 0 with x*x <= C(x + x*), or nothing when ker(x + x*) is not
/// inside ker x (tested as ||x v|| <= 1e-6 ||x|| on kernel vectors).
std::optional<CCertificate> c_certificate(const ComplexMatrix& x, const Tolerances& tol = {});

/// Smallest rho in [0, pi/2] whose closed sector |arg z| <= rho contains the
/// numerical range, or nothing when x is not accretive.
std::optional<double> sector_angle(const ComplexMatrix& x, const Tolerances& tol = {});

struct NearPositive {
  bool accretive = false;
  double im_norm = 0;  // ||(x - x*)/2i|| = ||x - Re x||
  bool within_eps = false;
};

NearPositive near_positive_report(const ComplexMatrix& x, double eps, const Tolerances& tol = {});

struct NumericalRange {
  std::vector<double> thetas;
  std::vector<double> support;  // h(theta) = lambda_max(Re(e^{-i theta} x))
  std::vector<cplx> boundary;   // <x v, v> at the top eigenvector
};

NumericalRange numerical_range(const ComplexMatrix& x, std::size_t grid_size = 720);

struct ConeReport {
  double accretive_margin = 0;
  double norm = 0;
  double f_gap = 0;
  double half_f_gap = 0;
  std::optional<double> c_constant;
  std::optional<double> sector_angle;
  double im_norm = 0;
};

ConeReport cone_report(const ComplexMatrix& x, const Tolerances& tol = {});

/// Re x is strictly positive in C*(A): Re x >= 0 and Re x compressed to the
/// range of the unit of C*(A) is invertible. Requires contains(A, x) and a
/// unit of A.
bool is_strictly_real_positive(const MatrixAlgebra& a, const ComplexMatrix& x, const Tolerances& tol = {});

}  // namespace realpos
