#include <cmath>
#include <random>

#include "doctest.h"
#include "realpos/matrix.hpp"
#include "test_support.hpp"

using namespace realpos;
using realpos::testing::random_hermitian;
using realpos::testing::random_matrix;
using realpos::testing::random_unitary;

TEST_CASE("herm_eig on closed-form inputs") {
  auto d = herm_eig(ComplexMatrix::diagonal({3.0, 1.0}));
  CHECK(d.values[0] == doctest::Approx(1.0));
  CHECK(d.values[1] == doctest::Approx(3.0));

  auto id = herm_eig(ComplexMatrix::identity(2));
  CHECK(id.values[0] == doctest::Approx(1.0));
  CHECK(id.values[1] == doctest::Approx(1.0));
  CHECK(approx_equal(id.vectors, ComplexMatrix::identity(2), 1e-14).holds);

  auto pauli = herm_eig(ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}));
  CHECK(pauli.values[0] == doctest::Approx(-1.0));
  CHECK(pauli.values[1] == doctest::Approx(1.0));
}

TEST_CASE("herm_eig reconstructs random Hermitian matrices") {
  for (int seed = 0; seed < 200; ++seed) {
    std::mt19937_64 rng(seed);
    const std::size_t n = 1 + seed % 12;
    const ComplexMatrix h = random_hermitian(n, rng);
    const auto e = herm_eig(h);
    std::vector<cplx> lam(e.values.begin(), e.values.end());
    const ComplexMatrix rec = e.vectors * ComplexMatrix::diagonal(lam) * e.vectors.adjoint();
    CHECK(op_norm(rec - h) <= 1e-9 * op_norm(h));
    CHECK(op_norm(e.vectors.adjoint() * e.vectors - ComplexMatrix::identity(n)) <= 1e-10);
    for (std::size_t k = 1; k < n; ++k) CHECK(e.values[k - 1] <= e.values[k]);
  }
}

TEST_CASE("herm_eig rejects non-square input") {
  CHECK_THROWS_AS(herm_eig(ComplexMatrix(2, 3)), DimensionError);
}

TEST_CASE("op_norm examples") {
  CHECK(op_norm(ComplexMatrix::identity(3)) == doctest::Approx(1.0));
  CHECK(op_norm(ComplexMatrix::from_rows({{0.0, 2.0}, {0.0, 0.0}})) == doctest::Approx(2.0));
  const cplx i(0, 1);
  const auto x = ComplexMatrix::from_rows({{1.0, i}, {i, 0.0}});
  CHECK(std::abs(op_norm(x) - (1.0 + std::sqrt(5.0)) / 2.0) <= 1e-12);
}

TEST_CASE("op_norm is unitarily invariant, subadditive and submultiplicative") {
  for (int seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(1000 + seed);
    const std::size_t n = 2 + seed % 6;
    const auto m = random_matrix(n, rng);
    const auto b = random_matrix(n, rng);
    const auto u = random_unitary(n, rng);
    const auto w = random_unitary(n, rng);
    CHECK(std::abs(op_norm(u * m * w) - op_norm(m)) <= 1e-9);
    CHECK(op_norm(m + b) <= op_norm(m) + op_norm(b) + 1e-9);
    CHECK(op_norm(m * b) <= op_norm(m) * op_norm(b) + 1e-9);
  }
}

TEST_CASE("op_norm agrees with the largest singular value") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    const auto m = random_matrix(5, rng);
    const auto s = svd(m);
    CHECK(std::abs(s.values.front() - op_norm(m)) <= 1e-10 * op_norm(m));
    std::vector<cplx> sig(s.values.begin(), s.values.end());
    CHECK(op_norm(s.u * ComplexMatrix::diagonal(sig) * s.v.adjoint() - m) <= 1e-10 * op_norm(m));
  }
  const auto rect = ComplexMatrix(2, 3, {1.0, 0.0, 0.0, 0.0, 0.0, 3.0});
  CHECK(op_norm(rect) == doctest::Approx(3.0));
  const auto srect = svd(rect);
  CHECK(srect.values.size() == 2);
  CHECK(srect.values[0] == doctest::Approx(3.0));
}

TEST_CASE("solve examples and residual") {
  const auto b = ComplexMatrix::from_rows({{1.0, 2.0}, {cplx(0, 1), -1.0}});
  CHECK(solve(ComplexMatrix::identity(2), b) == b);
  CHECK(approx_equal(solve(2.0 * ComplexMatrix::identity(2), ComplexMatrix::identity(2)),
                     0.5 * ComplexMatrix::identity(2), 1e-15)
            .holds);
  CHECK(approx_equal(solve(ComplexMatrix::diagonal({1.0, 2.0}), ComplexMatrix::identity(2)),
                     ComplexMatrix::diagonal({1.0, 0.5}), 1e-15)
            .holds);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const auto m = random_matrix(6, rng) + 4.0 * ComplexMatrix::identity(6);
    const auto rhs = random_matrix(6, rng);
    const auto x = solve(m, rhs);
    CHECK(op_norm(m * x - rhs) <= 1e-12 * op_norm(rhs) * op_norm(m));
  }
}

TEST_CASE("solve reports the failing pivot") {
  const auto m = ComplexMatrix::from_rows({{1.0, 2.0}, {2.0, 4.0}});
  try {
    solve(m, ComplexMatrix::identity(2));
    FAIL("expected SingularMatrixError");
  } catch (const SingularMatrixError& e) {
    CHECK(e.pivot_index == 1);
  }
}

TEST_CASE("min_real_eig examples") {
  const cplx i(0, 1);
  CHECK(min_real_eig(ComplexMatrix::identity(2)) == doctest::Approx(1.0));
  CHECK(std::abs(min_real_eig(i * ComplexMatrix::identity(2))) <= 1e-15);
  CHECK(std::abs(min_real_eig(ComplexMatrix::from_rows({{1.0, i}, {i, 0.0}}))) <= 1e-15);
}

TEST_CASE("real and imaginary parts recombine") {
  std::mt19937_64 rng(11);
  const auto m = random_matrix(4, rng);
  const cplx i(0, 1);
  CHECK(op_norm(real_part(m) + i * imag_part(m) - m) <= 1e-14);
  CHECK(op_norm(imag_part(m) - imag_part(m).adjoint()) <= 1e-14);
}

TEST_CASE("matrix construction guards") {
  CHECK_THROWS_AS(ComplexMatrix(1, 1, {cplx(NAN, 0)}), InputError);
  CHECK_THROWS_AS(ComplexMatrix(2, 2, {1.0}), DimensionError);
  CHECK_THROWS_AS(ComplexMatrix::identity(2) * ComplexMatrix::identity(3), DimensionError);
  Tolerances t;
  CHECK_NOTHROW(t.validate());
  t.psd_slack = 1e-12;
  CHECK_THROWS_AS(t.validate(), InputError);
}

TEST_CASE("projection helpers") {
  const auto p = spectral_projection_above(ComplexMatrix::diagonal({0.2, 0.9, 0.7}), 0.5);
  CHECK(approx_equal(p, ComplexMatrix::diagonal({0.0, 1.0, 1.0}), 1e-14).holds);
  CHECK(is_projection(p, 1e-12).holds);
  CHECK(range_isometry(p).cols() == 2);
  CHECK(int_power(ComplexMatrix::diagonal({2.0, 3.0}), 5) == ComplexMatrix::diagonal({32.0, 243.0}));
}
