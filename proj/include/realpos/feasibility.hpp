#pragma once

// Convex spectral feasibility over the real coordinates of a matrix algebra.
//
// The unknown a ranges over a MatrixAlgebra. Equalities are eliminated
// exactly (least-squares particular solution plus null space); the spectral
// constraints are handled by alternating projections, optionally with Dykstra
// corrections. Verdicts are one-sided: feasible or unconverged.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "realpos/algebra.hpp"
#include "realpos/matrix.hpp"

namespace realpos {

/// a -> sum_i P_i a Q_i. P_i and Q_i may be rectangular.
struct LinearMap {
  struct Term {
    ComplexMatrix left;
    ComplexMatrix right;
  };
  std::vector<Term> terms;

  static LinearMap identity(std::size_t n);
  static LinearMap left(ComplexMatrix p);
  static LinearMap right(ComplexMatrix q);
  static LinearMap sandwich(ComplexMatrix p, ComplexMatrix q);
  LinearMap& add(ComplexMatrix p, ComplexMatrix q);

  ComplexMatrix operator()(const ComplexMatrix& a) const;
  std::size_t out_rows() const;
  std::size_t out_cols() const;
};

/// L(a) = target.
struct Equality {
  LinearMap map;
  ComplexMatrix target;
  std::string label;
};

/// Re(L(a)) + offset >= 0, offset Hermitian.
struct PsdFloor {
  LinearMap map;
  ComplexMatrix offset;
  std::string label;
};

/// ||L(a) + offset|| <= cap (the Schur-complement block LMI in norm form).
struct NormCap {
  LinearMap map;
  ComplexMatrix offset;
  double cap = 1.0;
  std::string label;
};

struct FeasibilityProblem {
  MatrixAlgebra algebra;
  std::vector<Equality> equalities;
  std::vector<PsdFloor> floors;
  std::vector<NormCap> caps;
};

struct SolverOptions {
  double solver_tol = 1e-6;
  /// Restarts allowed after stagnation (the first run counts as round 1).
  int max_rounds = 4;
  int max_iterations_per_round = 4000;
  std::uint64_t seed = 0;
  bool dykstra = false;
  /// Initial point; projected onto the affine set cut out by the equalities.
  std::optional<ComplexMatrix> start;
};

enum class SolveStatus { feasible, unconverged };
std::string_view to_string(SolveStatus s);

struct ConstraintResidual {
  std::string label;
  double value = 0.0;
};

struct FeasibilitySolution {
  ComplexMatrix value;
  std::vector<ConstraintResidual> residuals;
  SolveStatus verdict = SolveStatus::unconverged;
  int iterations = 0;
  int rounds = 0;
  double max_residual() const;
};

/// Residuals of a candidate: equalities ||L(a) - R||_F, floors
/// max(0, -lambda_min), caps max(0, sigma_max - cap).
std::vector<ConstraintResidual> constraint_residuals(const FeasibilityProblem& p, const ComplexMatrix& a);

/// Throws InputError on malformed constraints.
FeasibilitySolution solve_feasibility(const FeasibilityProblem& p, const SolverOptions& opts = {});

}  // namespace realpos
