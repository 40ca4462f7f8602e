#pragma once

// Interpolation problems as data: one record per theorem instance, random
// generators that enforce every precondition by construction, and dispatch
// to the matching solver.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "realpos/algebra.hpp"
#include "realpos/interp.hpp"
#include "realpos/random.hpp"

namespace realpos {

/// dominate, decompose, np, urysohn, strict-urysohn, peak, tietze.
const std::vector<std::string>& interp_theorems();

struct InterpProblem {
  std::string theorem;
  MatrixAlgebra algebra;
  std::optional<ComplexMatrix> q, u, p, b, c;
  std::optional<ConvexRegion> region;
  double eps = 1e-2;
};

/// Throws InputError for an unknown theorem or a missing matrix.
InterpResult solve_interp(const InterpProblem& problem, const InterpOptions& opts = {});

/// Random instance over a unital algebra (full, diag, upper or blockupper
/// conjugated by a random unitary), 2 <= n <= 6.
InterpProblem random_interp_problem(std::string_view theorem, std::size_t n, Rng& rng);

/// {U b U* : b in A}.
MatrixAlgebra conjugate_algebra(const MatrixAlgebra& a, const ComplexMatrix& u);

}  // namespace realpos
