#include "realpos/transforms.hpp"

#include "realpos/cones.hpp"

namespace realpos {

namespace {

void require_accretive(const ComplexMatrix& x, const char* what, const Tolerances& tol) {
  require_square(x, what);
  const auto v = is_accretive(x, tol);
  if (!v) {
    throw PreconditionError(std::string(what) + ": input is not accretive (lambda_min(Re x) = " +
                            std::to_string(v.margin) + ")");
  }
}

}  // namespace

ComplexMatrix cayley(const ComplexMatrix& x, const Tolerances& tol) {
  require_accretive(x, "cayley", tol);
  const ComplexMatrix id = ComplexMatrix::identity(x.rows());
  return solve(x + id, x - id);
}

ComplexMatrix f_transform(const ComplexMatrix& x, const Tolerances& tol) {
  require_accretive(x, "f_transform", tol);
  return solve(x + ComplexMatrix::identity(x.rows()), x);
}

FInverse f_inverse(const ComplexMatrix& t, const Tolerances& tol) {
  require_square(t, "f_inverse");
  if (op_norm(t) >= 1.0 - tol.eq_tol) throw PreconditionError("f_inverse: requires ||T|| < 1");
  FInverse out;
  out.value = solve(ComplexMatrix::identity(t.rows()) - t, t);
  out.outside_half_f = !f_membership(t, tol).in_half_f;
  return out;
}

}  // namespace realpos
