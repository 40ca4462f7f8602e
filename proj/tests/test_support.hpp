#pragma once

#include <random>

#include "realpos/matrix.hpp"

namespace realpos::testing {

inline ComplexMatrix random_matrix(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix m(n);
  for (auto& z : m.entries()) z = cplx(g(rng), g(rng));
  return m;
}

inline ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  return real_part(random_matrix(n, rng));
}

inline ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& rng) {
  return herm_eig(random_hermitian(n, rng)).vectors;
}

// H + iK with H positive semidefinite and K Hermitian, scaled to norm `scale`.
inline ComplexMatrix random_accretive(std::size_t n, std::mt19937_64& rng, double scale = 1.0) {
  const ComplexMatrix g = random_matrix(n, rng);
  const ComplexMatrix x = g * g.adjoint() + cplx(0, 1) * random_hermitian(n, rng);
  return x * (scale / op_norm(x));
}

}  // namespace realpos::testing
