#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "realpos/matrix.hpp"

namespace realpos {

/// A subalgebra of M_n, stored as a trace-orthonormal basis.
struct MatrixAlgebra {
  std::size_t ambient_dim = 0;
  std::vector<ComplexMatrix> basis;
  bool contains_identity = false;
  std::string label;

  std::size_t dim() const { return basis.size(); }
  /// Coefficients <M, b_k> of the orthogonal projection onto the span.
  std::vector<cplx> coordinates(const ComplexMatrix& m) const;
  ComplexMatrix combine(std::span<const cplx> coords) const;
  ComplexMatrix project(const ComplexMatrix& m) const;
};

enum class GenerationMode { algebra, cstar };

/// Orthonormalizes `elements` (modified Gram-Schmidt, two passes) without
/// closing under products. An element is dropped when its residual after
/// orthogonalization is at most 1e-10 times the largest input norm.
MatrixAlgebra span_of(std::size_t n, const std::vector<ComplexMatrix>& elements, std::string label = "");

/// Smallest subalgebra containing the generators (their adjoints in cstar
/// mode, and I when requested).
MatrixAlgebra generate_algebra(const std::vector<ComplexMatrix>& generators, GenerationMode mode,
                               bool with_identity, std::string label = "");

/// margin = ||M - P_A(M)||; holds iff margin <= eq_tol * max(1, ||M||).
Verdict contains(const MatrixAlgebra& a, const ComplexMatrix& m, const Tolerances& tol = {});

/// The two-sided identity of A, when A has one.
std::optional<ComplexMatrix> identity_of(const MatrixAlgebra& a, const Tolerances& tol = {});

/// identity_of(A) when it is also a selfadjoint projection. This is what the
/// solvers mean by a unital algebra.
std::optional<ComplexMatrix> unit_projection(const MatrixAlgebra& a, const Tolerances& tol = {});

/// span(A U {I}).
MatrixAlgebra unitize(const MatrixAlgebra& a);

/// C*(A): the C*-algebra generated by A inside M_n.
MatrixAlgebra cstar_envelope(const MatrixAlgebra& a);

struct AHResult {
  MatrixAlgebra a_h;
  ComplexMatrix q;
  /// q is the unit of the C*-algebra A ∩ A*, which holds every projection of A.
  bool maximal = true;
  std::size_t accretive_samples = 0;
  /// Largest of ||q a - a||, ||a q - a|| and dist(a, A_H) over the samples.
  double max_sample_residual = 0.0;
  std::string warning;
};

struct AHOptions {
  int starts = 16;
  int steps = 200;
};

AHResult a_h(const MatrixAlgebra& a, std::uint64_t seed, const Tolerances& tol = {}, AHOptions opts = {});

/// k x k block matrices with entries in A. Requires k * n <= 64.
MatrixAlgebra amplify(const MatrixAlgebra& a, std::size_t k);

/// {diag(x, y) : x in A, y in B}.
MatrixAlgebra direct_sum(const MatrixAlgebra& a, const MatrixAlgebra& b);

/// max over basis pairs of ||b_i b_j - P_A(b_i b_j)||.
double closure_residual(const MatrixAlgebra& a);

/// Largest containment residual of either algebra's basis in the other.
double span_distance(const MatrixAlgebra& a, const MatrixAlgebra& b);

/// Named algebras: "full:n", "upper:n", "diag:n", "blockupper:n1,n2",
/// "span:n:E11,E12,..." (one-based matrix units).
MatrixAlgebra canned_algebra(std::string_view name);

}  // namespace realpos
