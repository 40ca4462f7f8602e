#pragma once

#include <string_view>
#include <vector>

#include "realpos/algebra.hpp"
#include "realpos/matrix.hpp"

namespace realpos {

enum class ProjectionMethod { iterative, oracle, both };
enum class ProjectionStatus { converged, diverged, zero };
std::string_view to_string(ProjectionMethod m);
std::string_view to_string(ProjectionStatus s);

struct ProjectionResult {
  ComplexMatrix proj;
  ProjectionMethod method = ProjectionMethod::oracle;
  int iterations = 0;
  double oracle_residual = 0;  // ||iterative - oracle|| when both ran
  ProjectionStatus status = ProjectionStatus::converged;
  std::vector<double> trace;  // ||y^2 - y|| per iteration
};

/// s(x) for accretive x. Iterative: y_k = x^{1/2^k} until ||y_k^2 - y_k|| is
/// below iter_tol, then spectral rounding at 1/2. Oracle: the orthogonal
/// projection onto (ker x)^perp, kernel from singular values <= 1e-10 relative.
ProjectionResult support_projection(const ComplexMatrix& x, ProjectionMethod method = ProjectionMethod::both,
                                    const Tolerances& tol = {});

/// u(x) for ||x|| <= 1. Iterative: repeated squaring. Oracle (x in the half-F
/// set only): the orthogonal projection onto ker(x - I).
ProjectionResult peak_projection(const ComplexMatrix& x, ProjectionMethod method = ProjectionMethod::iterative,
                                 const Tolerances& tol = {});

/// lambda_max((I - q) x*x (I - q)) < 1 - psd_slack; margin is 1 - lambda_max.
Verdict is_peak_for(const ComplexMatrix& x, const ComplexMatrix& q, const Tolerances& tol = {});

ComplexMatrix join(const ComplexMatrix& p, const ComplexMatrix& q, const Tolerances& tol = {});
ComplexMatrix meet(const ComplexMatrix& p, const ComplexMatrix& q, const Tolerances& tol = {});

struct HereditaryPair {
  MatrixAlgebra d;  // span{x b x}
  MatrixAlgebra j;  // span{x b} + C x
  double hereditary_residual = 0;  // D A D inside D
  double support_residual = 0;     // s(x) is a two-sided identity on D
};

HereditaryPair hsa_and_ideal(const MatrixAlgebra& a, const ComplexMatrix& x, const Tolerances& tol = {});

}  // namespace realpos
