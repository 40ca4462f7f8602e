#include "realpos/random.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "realpos/transforms.hpp"

namespace realpos {

namespace {

void check_size(std::size_t n) {
  if (n == 0 || n > max_dim()) {
    throw DimensionError("generator size " + std::to_string(n) + " outside [1, " + std::to_string(max_dim()) + "]");
  }
}

ComplexMatrix psd_sqrt(const ComplexMatrix& h) {
  const auto e = herm_eig(h);
  std::vector<cplx> r(e.values.size());
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = std::sqrt(std::max(0.0, e.values[k]));
  return e.vectors * ComplexMatrix::diagonal(r) * e.vectors.adjoint();
}

}  // namespace

std::size_t max_dim() {
  if (const char* env = std::getenv("REALPOS_MAX_DIM")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 16;
}

ComplexMatrix gen_gaussian(std::size_t n, Rng& rng) {
  ComplexMatrix m(n);
  for (auto& z : m.entries()) z = rng.complex_normal();
  return m;
}

ComplexMatrix gen_hermitian(std::size_t n, Rng& rng) { return real_part(gen_gaussian(n, rng)); }

ComplexMatrix gen_unitary(std::size_t n, Rng& rng) {
  // Gram-Schmidt on a Gaussian matrix gives a Haar-distributed unitary.
  ComplexMatrix g = gen_gaussian(n, rng);
  for (std::size_t j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t k = 0; k < j; ++k) {
        cplx s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += std::conj(g(i, k)) * g(i, j);
        for (std::size_t i = 0; i < n; ++i) g(i, j) -= s * g(i, k);
      }
    double nrm = 0.0;
    for (std::size_t i = 0; i < n; ++i) nrm += std::norm(g(i, j));
    nrm = std::sqrt(nrm);
    for (std::size_t i = 0; i < n; ++i) g(i, j) /= nrm;
  }
  return g;
}

ComplexMatrix gen_psd(std::size_t n, Rng& rng) {
  const ComplexMatrix g = gen_gaussian(n, rng);
  return real_part(g * g.adjoint()) / static_cast<double>(n);
}

ComplexMatrix gen_accretive(std::size_t n, Rng& rng) {
  check_size(n);
  const ComplexMatrix x = gen_psd(n, rng) + cplx(0, 1) * gen_hermitian(n, rng);
  return x * (2.0 * rng.uniform(0.25, 1.0) / op_norm(x));
}

ComplexMatrix gen_accretive(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return gen_accretive(n, rng);
}

ComplexMatrix gen_accretive_rank(std::size_t n, std::size_t rank, Rng& rng) {
  check_size(n);
  if (rank > n) throw DimensionError("gen_accretive_rank: rank exceeds n");
  ComplexMatrix block(n);
  if (rank > 0) block.set_block(0, 0, gen_accretive(rank, rng));
  const ComplexMatrix u = gen_unitary(n, rng);
  return u * block * u.adjoint();
}

ComplexMatrix gen_half_f(std::size_t n, Rng& rng) { return f_transform(gen_accretive(n, rng)); }

ComplexMatrix gen_half_f(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return gen_half_f(n, rng);
}

ComplexMatrix gen_half_f_norm1(std::size_t n, Rng& rng) {
  check_size(n);
  if (n == 1) return ComplexMatrix::identity(1);
  const std::size_t k = rng.index(1, n - 1);
  ComplexMatrix block = ComplexMatrix::identity(n);
  block.set_block(k, k, gen_half_f(n - k, rng));
  const ComplexMatrix w = gen_unitary(n, rng);
  return w * block * w.adjoint();
}

ComplexMatrix gen_sectorial(std::size_t n, double rho, Rng& rng) {
  check_size(n);
  const ComplexMatrix h = gen_psd(n, rng) + 0.05 * ComplexMatrix::identity(n);
  ComplexMatrix c = gen_hermitian(n, rng);
  c = c * (std::tan(rho) / op_norm(c));
  const ComplexMatrix r = psd_sqrt(h);
  return r * (ComplexMatrix::identity(n) + cplx(0, 1) * c) * r;
}

MatrixAlgebra gen_algebra(std::string_view kind, std::size_t n, Rng& rng) {
  check_size(n);
  const std::string nstr = std::to_string(n);
  if (kind == "full") return canned_algebra("full:" + nstr);
  if (kind == "oa") {
    return generate_algebra({gen_accretive(n, rng)}, GenerationMode::algebra, false, "oa(x)");
  }
  MatrixAlgebra base;
  if (kind == "diag" || kind == "upper") {
    base = canned_algebra(std::string(kind) + ":" + nstr);
  } else if (kind == "blockupper") {
    if (n < 2) throw DimensionError("blockupper needs n >= 2");
    const std::size_t n1 = rng.index(1, n - 1);
    base = canned_algebra("blockupper:" + std::to_string(n1) + "," + std::to_string(n - n1));
  } else {
    throw InputError("unknown algebra kind '" + std::string(kind) + "'");
  }
  const ComplexMatrix u = gen_unitary(n, rng);
  for (auto& b : base.basis) b = u * b * u.adjoint();
  return base;
}

MatrixAlgebra gen_algebra(std::string_view kind, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return gen_algebra(kind, n, rng);
}

ComplexMatrix gen_element(const MatrixAlgebra& a, Rng& rng) {
  std::vector<cplx> c(a.dim());
  double nrm = 0.0;
  for (auto& z : c) {
    z = rng.complex_normal();
    nrm += std::norm(z);
  }
  for (auto& z : c) z /= std::sqrt(nrm);
  return a.combine(c);
}

}  // namespace realpos
