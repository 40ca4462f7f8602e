#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "realpos/algebra.hpp"
#include "realpos/matrix.hpp"

namespace realpos {

/// Seeded generator that hands out independent child streams, so every case
/// of a suite is reproducible from (seed, case index) alone.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix(seed, 0)) {}

  Rng split(std::uint64_t stream) const { return Rng(mix(seed_, stream + 1)); }
  std::uint64_t seed() const { return seed_; }

  double normal() { return normal_(engine_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  /// Uniform integer in [lo, hi].
  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
  }
  cplx complex_normal() { return {normal(), normal()}; }

 private:
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    std::uint32_t out[2];
    seq.generate(out, out + 2);
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
  }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

/// Entry-wise standard complex Gaussian matrix.
ComplexMatrix gen_gaussian(std::size_t n, Rng& rng);
ComplexMatrix gen_hermitian(std::size_t n, Rng& rng);
ComplexMatrix gen_unitary(std::size_t n, Rng& rng);
/// Wishart-style G G* / n.
ComplexMatrix gen_psd(std::size_t n, Rng& rng);

/// H + iK, H Wishart and K Hermitian, rescaled to norm 2 U(0.25, 1).
ComplexMatrix gen_accretive(std::size_t n, Rng& rng);
ComplexMatrix gen_accretive(std::size_t n, std::uint64_t seed);

/// U (y + 0) U* with y = gen_accretive(rank) and U unitary: accretive with
/// an (n - rank)-dimensional kernel.
ComplexMatrix gen_accretive_rank(std::size_t n, std::size_t rank, Rng& rng);

/// f_transform(gen_accretive): a half-F element of norm < 1.
ComplexMatrix gen_half_f(std::size_t n, Rng& rng);
ComplexMatrix gen_half_f(std::size_t n, std::uint64_t seed);

/// W (I_k + y) W* with W unitary, 1 <= k < n and y = gen_half_f: a half-F
/// element of norm exactly 1 with a k-dimensional peak.
ComplexMatrix gen_half_f_norm1(std::size_t n, Rng& rng);

/// h^{1/2}(I + i c)h^{1/2} with h positive definite and ||c|| = tan(rho):
/// numerical range inside the closed sector of half-angle rho.
ComplexMatrix gen_sectorial(std::size_t n, double rho, Rng& rng);

/// Kinds: full, diag, upper, blockupper (random split), oa (generated by one
/// gen_accretive element). All but full and oa are conjugated by a random
/// unitary.
MatrixAlgebra gen_algebra(std::string_view kind, std::size_t n, Rng& rng);
MatrixAlgebra gen_algebra(std::string_view kind, std::size_t n, std::uint64_t seed);

/// Random element of A with Frobenius norm 1.
ComplexMatrix gen_element(const MatrixAlgebra& a, Rng& rng);

/// Largest dimension accepted by generators (REALPOS_MAX_DIM, default 16).
std::size_t max_dim();

}  // namespace realpos
