#include <cmath>
#include <numbers>

#include "doctest.h"
#include "realpos/algebra.hpp"
#include "realpos/cones.hpp"
#include "realpos/powers.hpp"
#include "realpos/projections.hpp"
#include "realpos/random.hpp"

using namespace realpos;

namespace {
const cplx I1(0, 1);
const ComplexMatrix kLeMerdy = ComplexMatrix::from_rows({{1.0, I1}, {I1, 0.0}});

// Positive semidefinite power through the Hermitian eigensolver.
ComplexMatrix hermitian_power(const ComplexMatrix& h, double a) {
  const auto e = herm_eig(h);
  std::vector<cplx> d(e.values.size());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = std::pow(std::max(0.0, e.values[k]), a);
  return e.vectors * ComplexMatrix::diagonal(d) * e.vectors.adjoint();
}

// Beta function B(p, q).
double beta(double p, double q) { return std::exp(std::lgamma(p) + std::lgamma(q) - std::lgamma(p + q)); }
}  // namespace

TEST_CASE("gauss_jacobi integrates polynomial moments exactly") {
  for (double r : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    const auto rule = gauss_jacobi(24, -r, r - 1.0);
    for (int k = 0; k < 40; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * std::pow(rule.nodes[i], k);
      // int_0^1 u^k (1-u)^{-r} u^{r-1} du = B(k + r, 1 - r)
      CHECK(s == doctest::Approx(beta(k + r, 1.0 - r)).epsilon(1e-11));
    }
    for (double u : rule.nodes) CHECK((u > 0.0 && u < 1.0));
  }
  const auto legendre = gauss_jacobi(3, 0.0, 0.0);
  CHECK(legendre.nodes[1] == doctest::Approx(0.5));
  CHECK(legendre.weights[1] == doctest::Approx(4.0 / 9.0));
}

TEST_CASE("eigen_general reconstructs diagonalizable matrices") {
  Rng rng(40);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 1 + t % 9;
    const auto x = gen_gaussian(n, rng);
    const auto e = eigen_general(x);
    REQUIRE(e.condition < 1e8);
    for (std::size_t k = 0; k < n; ++k) {
      const ComplexMatrix v = e.vectors.column(k);
      CHECK(op_norm(x * v - e.values[k] * v) <= 1e-10 * op_norm(x));
    }
  }
  const auto j = eigen_general(ComplexMatrix::from_rows({{1.0, 1.0}, {0.0, 1.0}}));
  CHECK(j.condition > 1e8);
}

TEST_CASE("power_spectral examples") {
  CHECK(approx_equal(power_spectral(ComplexMatrix::diagonal({4.0}), 0.5).value, ComplexMatrix::diagonal({2.0}), 1e-14)
            .holds);
  const auto r = power_spectral(I1 * ComplexMatrix::identity(2), 0.5).value;
  CHECK(approx_equal(r, std::polar(1.0, std::numbers::pi / 4) * ComplexMatrix::identity(2), 1e-14).holds);
  const auto y = power_spectral(kLeMerdy, 0.5);
  CHECK(op_norm(y.value) > 1.0);
  CHECK(op_norm(y.value - power_balakrishnan(kLeMerdy, 0.5).value) <= 1e-10);
  CHECK(op_norm(y.value * y.value - kLeMerdy) <= 1e-12);
  CHECK_THROWS_AS(power_spectral(ComplexMatrix::from_rows({{1.0, 1.0}, {0.0, 1.0}}), 0.5), DefectiveMatrixError);
  CHECK_THROWS_AS(power_spectral(-1.0 * ComplexMatrix::identity(2), 0.5), PreconditionError);
}

TEST_CASE("power_balakrishnan examples") {
  auto p = power_balakrishnan(ComplexMatrix::diagonal({1.0, 4.0}), 0.5, 64);
  CHECK(op_norm(p.value - ComplexMatrix::diagonal({1.0, 2.0})) <= 1e-8);
  CHECK(p.nodes_or_terms == 64);
  for (double r : {0.1, 0.5, 0.9}) {
    p = power_balakrishnan(ComplexMatrix::identity(3), r, 32);
    CHECK(op_norm(p.value - ComplexMatrix::identity(3)) <= 1e-13);
  }
  p = power_balakrishnan(ComplexMatrix::diagonal({I1}), 0.5, 64);
  CHECK(std::abs(p.value(0, 0) - std::polar(1.0, std::numbers::pi / 4)) <= 1e-8);
  CHECK_THROWS_AS(power_balakrishnan(ComplexMatrix::identity(2), 1.5), PreconditionError);
  CHECK_THROWS_AS(power_balakrishnan(ComplexMatrix::identity(2), 0.5, 8), InputError);
}

TEST_CASE("balakrishnan handles defective inputs") {
  const auto j = ComplexMatrix::from_rows({{1.0, 1.0}, {0.0, 1.0}});
  const auto p = power(j, 0.5);
  CHECK(p.method == PowerMethod::balakrishnan);
  CHECK(op_norm(p.value * p.value - j) <= 1e-10);
  CHECK(op_norm(p.value - ComplexMatrix::from_rows({{1.0, 0.5}, {0.0, 1.0}})) <= 1e-10);
}

TEST_CASE("root_series examples") {
  CHECK(op_norm(root_series(ComplexMatrix::identity(2), 2).value - ComplexMatrix::identity(2)) == 0.0);
  const auto p = ComplexMatrix::diagonal({1.0, 0.0});
  const auto sp = root_series(p, 2);
  CHECK(op_norm(sp.value - p) <= sp.est_error + 1e-15);
  CHECK(op_norm(root_series(p, 2, 20000).value - p) < op_norm(sp.value - p));
  const auto h = root_series(0.5 * ComplexMatrix::identity(2), 2);
  CHECK(op_norm(h.value - std::sqrt(0.5) * ComplexMatrix::identity(2)) <= h.est_error);
  CHECK(h.est_error > 0.0);
  CHECK_THROWS_AS(root_series(3.0 * ComplexMatrix::identity(2), 2), PreconditionError);
  CHECK_THROWS_AS(root_series(ComplexMatrix::identity(2), 1), PreconditionError);
}

TEST_CASE("methods agree on accretive matrices") {
  Rng rng(41);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 1 + t % 8;
    const auto x = gen_accretive(n, rng) + 0.05 * ComplexMatrix::identity(n);
    for (double r : {0.25, 0.5, 0.75}) {
      const auto s = power_spectral(x, r).value;
      const auto b = power_balakrishnan(x, r, 128).value;
      CHECK(op_norm(s - b) <= 1e-6 * std::pow(op_norm(x), r));
    }
    const auto f = gen_half_f(n, rng);
    for (int m : {2, 3}) {
      const auto ser = root_series(f, m);
      CHECK(op_norm(ser.value - power_spectral(f, 1.0 / m).value) <= ser.est_error + 1e-12);
    }
  }
}

TEST_CASE("power reproduces roots and Hermitian powers") {
  Rng rng(42);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 1 + t % 7;
    const auto x = gen_accretive(n, rng);
    for (int m : {2, 3, 5}) {
      const auto y = power(x, 1.0 / m).value;
      CHECK(op_norm(int_power(y, m) - x) <= 1e-9);
    }
    const auto h = gen_psd(n, rng);
    CHECK(op_norm(power(h, 0.37).value - hermitian_power(h, 0.37)) <= 1e-9);
    CHECK(op_norm(power(x, 1.0).value - x) == 0.0);
  }
  CHECK(approx_equal(power(2.0 * ComplexMatrix::identity(2), 1.5).value,
                     2.0 * std::sqrt(2.0) * ComplexMatrix::identity(2), 1e-14)
            .holds);
}

TEST_CASE("root laws") {
  Rng rng(43);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + t % 6;
    const auto x = gen_accretive(n, rng);
    CHECK(op_norm(power(x, 0.3).value * power(x, 0.7).value - x) <= 1e-6);
    for (double c : {0.5, 2.0, 10.0})
      for (double a : {0.3, 0.5, 1.7})
        CHECK(op_norm(power(c * x, a).value - std::pow(c, a) * power(x, a).value) <= 1e-8);
    double prev = 1e300;
    for (int k = 1; k <= 4; ++k) {
      const double d = op_norm(power(x, 0.5).value - power(x, 0.5 + std::pow(10.0, -k)).value);
      CHECK(d < prev);
      prev = d;
    }
    const auto oa = generate_algebra({x}, GenerationMode::algebra, false);
    for (double a : {0.5, 1.0 / 3, 1.5}) CHECK(contains(oa, power(x, a).value).margin <= 1e-6);
  }
}

TEST_CASE("roots shrink the sector") {
  Rng rng(44);
  for (int t = 0; t < 30; ++t) {
    const auto x = gen_sectorial(2 + t % 5, rng.uniform(0.2, 1.5), rng);
    const double s = *sector_angle(x);
    for (double a : {0.25, 0.5, 0.8}) {
      const auto sa = sector_angle(power(x, a).value);
      REQUIRE(sa);
      CHECK(*sa <= a * s + 1e-6);
      CHECK(*sa <= a * std::numbers::pi / 2 + 1e-6);
    }
  }
}

TEST_CASE("imaginary parts of roots decay") {
  Rng rng(45);
  for (int t = 0; t < 20; ++t) {
    const auto x = gen_accretive(2 + t % 5, rng);
    const double rho = *sector_angle(x);
    for (int n = 1; n <= 4096; n *= 2) {
      const auto y = power(x, 1.0 / n).value;
      const double im = op_norm(imag_part(y));
      CHECK(im <= std::sin(rho / n) * op_norm(y) + 1e-9);
      if (n == 4096) CHECK(im <= 1e-3);
    }
  }
}

TEST_CASE("vav identity") {
  CHECK(vav_identity_check(ComplexMatrix::diagonal({0.0, 1.0}), ComplexMatrix::diagonal({0.0, 1.0}), 0.5) <= 1e-14);
  Rng rng(46);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 2 + t % 5;
    const auto a = gen_accretive(n, rng);
    const auto v = gen_unitary(n, rng);
    for (double r : {0.25, 0.5, 0.75}) CHECK(vav_identity_check(a, v, r) <= 1e-7);
    CHECK(vav_identity_check(a, v, 2.0) <= 1e-9);
  }
  CHECK_THROWS_AS(vav_identity_check(ComplexMatrix::diagonal({0.0, 1.0}), ComplexMatrix::identity(2), 0.5),
                  PreconditionError);
  CHECK_THROWS_AS(vav_identity_check(ComplexMatrix::identity(2), ComplexMatrix::identity(2), 1.5),
                  PreconditionError);
}

TEST_CASE("root monotonicity") {
  for (double m : root_monotonicity_report(0.5 * ComplexMatrix::identity(2), 8)) CHECK(m > 0.0);
  Rng rng(47);
  for (int t = 0; t < 30; ++t)
    for (double m : root_monotonicity_report(gen_half_f(2 + t % 6, rng), 8)) CHECK(m >= -1e-7);
  const auto lm = root_monotonicity_report(kLeMerdy, 8);
  CHECK(*std::min_element(lm.begin(), lm.end()) < -10 * Tolerances{}.psd_slack);
  CHECK(lm[1] < -1e-2);
  CHECK_THROWS_AS(root_monotonicity_report(kLeMerdy, 13), PreconditionError);
}

TEST_CASE("rescaled roots") {
  const auto one = rescaled_root_check(ComplexMatrix::identity(2));
  CHECK(one.c == doctest::Approx(4.0));
  CHECK(one.root_in_half_f);
  const auto lm = rescaled_root_check(kLeMerdy);
  CHECK(lm.root_in_half_f);
  CHECK(lm.margins.size() == 6);
  for (double m : lm.margins) CHECK(m >= -1e-7);
  const auto scaled = rescaled_root_check(7.0 * kLeMerdy);
  CHECK(scaled.c == doctest::Approx(7.0 * lm.c));
  for (std::size_t k = 0; k < lm.margins.size(); ++k) CHECK(std::abs(scaled.margins[k] - lm.margins[k]) <= 1e-10);
  Rng rng(48);
  for (int t = 0; t < 30; ++t) {
    const auto r = rescaled_root_check(gen_accretive(2 + t % 6, rng));
    CHECK(r.root_in_half_f);
    for (double m : r.margins) CHECK(m >= -1e-7);
  }
}

TEST_CASE("holder estimates") {
  CHECK(holder_check(ComplexMatrix::identity(2), ComplexMatrix::identity(2), 0.5, 10, 1) == 0.0);
  CHECK(holder_check(ComplexMatrix::identity(1), ComplexMatrix(1), 0.5, 10, 1) == doctest::Approx(1.0));
  Rng rng(49);
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 2 + t % 4;
    std::vector<cplx> da(n), db(n);
    for (std::size_t k = 0; k < n; ++k) {
      da[k] = cplx(rng.uniform(0, 2), rng.uniform(-1, 1));
      db[k] = cplx(rng.uniform(0, 2), rng.uniform(-1, 1));
    }
    const auto u = gen_unitary(n, rng);
    const auto a = u * ComplexMatrix::diagonal(da) * u.adjoint();
    const auto b = u * ComplexMatrix::diagonal(db) * u.adjoint();
    const double k1 = holder_check(a, b, 0.5, 4000, 1);
    const double k2 = holder_check(a, b, 0.5, 4000, 2);
    CHECK(std::isfinite(k1));
    CHECK(std::abs(k1 - k2) <= 0.2 * std::max(k1, k2));
  }
  CHECK_THROWS_AS(holder_check(kLeMerdy, ComplexMatrix::diagonal({1.0, 0.0}), 0.5, 5, 1), PreconditionError);
}

TEST_CASE("disk functional calculus order") {
  Rng rng(50);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 2 + t % 5;
    const auto x = 2.0 * gen_half_f(n, rng);  // ||I - x|| <= 1
    auto r = disk_order_check({}, {1.0, 1.0}, x);
    CHECK(std::abs(r.premise_margin) <= 1e-12);
    CHECK(r.conclusion_margin >= -1e-7);
    CHECK(r.implication_holds);
    r = disk_order_check({}, {1.0, 0.0, 1.0}, x);
    CHECK(r.premise_margin >= -1e-12);
    CHECK(r.conclusion_margin >= -1e-7);
    r = disk_order_check({0.0, 1.0}, {1.0}, x);
    CHECK(r.conclusion_margin == doctest::Approx(min_real_eig(x)).epsilon(1e-12));
    CHECK(r.conclusion_margin >= -1e-7);
  }
}
