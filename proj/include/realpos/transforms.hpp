#pragma once

#include "realpos/matrix.hpp"

namespace realpos {

/// (x - I)(x + I)^{-1}. Requires x accretive.
ComplexMatrix cayley(const ComplexMatrix& x, const Tolerances& tol = {});

/// x(x + I)^{-1} = I - (x + I)^{-1}. Requires x accretive.
ComplexMatrix f_transform(const ComplexMatrix& x, const Tolerances& tol = {});

struct FInverse {
  ComplexMatrix value;  // T(I - T)^{-1}
  /// T was outside the half-F set; the value need not be accretive.
  bool outside_half_f = false;
};

/// Requires ||T|| < 1 - eq_tol. Membership of T in the half-F set is only
/// reported, not enforced.
FInverse f_inverse(const ComplexMatrix& t, const Tolerances& tol = {});

}  // namespace realpos
