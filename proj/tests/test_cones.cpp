#include <cmath>
#include <numbers>

#include "doctest.h"
#include "realpos/cones.hpp"
#include "realpos/powers.hpp"
#include "realpos/random.hpp"

using namespace realpos;

namespace {
const cplx I1(0, 1);
const ComplexMatrix kLeMerdy = ComplexMatrix::from_rows({{1.0, I1}, {I1, 0.0}});

// Smallest C on a fine bisection with a direct PSD test.
double bisect_c(const ComplexMatrix& x) {
  const ComplexMatrix h = x + x.adjoint();
  const ComplexMatrix xx = x.adjoint() * x;
  double lo = 0.0, hi = 1.0;
  while (min_eig(hi * h - xx) < -1e-12) hi *= 2.0;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (min_eig(mid * h - xx) >= -1e-12 ? hi : lo) = mid;
  }
  return hi;
}
}  // namespace

TEST_CASE("is_accretive examples") {
  auto v = is_accretive(ComplexMatrix::identity(2));
  CHECK(v.holds);
  CHECK(v.margin == doctest::Approx(1.0));
  v = is_accretive(-1.0 * ComplexMatrix::identity(2));
  CHECK_FALSE(v.holds);
  CHECK(v.margin == doctest::Approx(-1.0));
  v = is_accretive(kLeMerdy);
  CHECK(v.holds);
  CHECK(std::abs(v.margin) <= 1e-15);
}

TEST_CASE("f_membership examples") {
  auto f = f_membership(0.5 * ComplexMatrix::identity(2));
  CHECK(f.in_half_f);
  CHECK(f.half_f_gap == doctest::Approx(1.0));
  f = f_membership(I1 * ComplexMatrix::identity(2));
  CHECK_FALSE(f.in_f);
  CHECK(f.f_gap == doctest::Approx(1.0 - std::sqrt(2.0)));
  f = f_membership(ComplexMatrix::diagonal({1.0, 0.0}));
  CHECK(f.in_half_f);
  CHECK(std::abs(f.half_f_gap) <= 1e-15);
}

TEST_CASE("c_certificate examples") {
  auto c = c_certificate(ComplexMatrix::identity(3));
  REQUIRE(c);
  CHECK(c->value == doctest::Approx(0.5));
  CHECK_FALSE(c_certificate(I1 * ComplexMatrix::identity(2)));
  CHECK_FALSE(c_certificate(kLeMerdy));
  c = c_certificate(ComplexMatrix(2));
  REQUIRE(c);
  CHECK(c->value == 0.0);
}

TEST_CASE("c_certificate matches a bisection oracle") {
  Rng rng(21);
  for (int t = 0; t < 60; ++t) {
    const auto x = gen_accretive(2 + t % 5, rng);
    const auto c = c_certificate(x);
    REQUIRE(c);
    CHECK(std::abs(c->value - bisect_c(x)) <= 1e-6 * std::max(1.0, c->value));
    CHECK(c->verification_margin >= -1e-7 * std::max(1.0, op_norm(x) * op_norm(x)));
  }
}

TEST_CASE("cone linkage between c and the half-F set") {
  Rng rng(22);
  Tolerances tol;
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + t % 8;
    const ComplexMatrix x = t % 2 ? gen_accretive(n, rng) : gen_half_f(n, rng);
    const auto c = c_certificate(x);
    REQUIRE(c);
    if (c->value > 0) CHECK(f_membership(x / (2.0 * c->value)).half_f_gap >= -tol.psd_slack);
    if (f_membership(x).in_half_f) CHECK(c->value <= 0.5 + tol.psd_slack);
  }
}

TEST_CASE("sector_angle examples") {
  const auto s = sector_angle(ComplexMatrix::diagonal({1.0, std::polar(1.0, std::numbers::pi / 4)}));
  REQUIRE(s);
  CHECK(std::abs(*s - std::numbers::pi / 4) <= 1e-9);
  CHECK(*sector_angle(ComplexMatrix::identity(2)) == 0.0);
  CHECK(std::abs(*sector_angle(kLeMerdy) - std::numbers::pi / 2) <= 1e-6);
  CHECK_FALSE(sector_angle(-1.0 * ComplexMatrix::identity(2)));
  CHECK(*sector_angle(ComplexMatrix(2)) == 0.0);
}

TEST_CASE("sector_angle agrees with the numerical range") {
  Rng rng(23);
  for (int t = 0; t < 40; ++t) {
    const double rho = rng.uniform(0.1, 1.4);
    const auto x = gen_sectorial(2 + t % 4, rho, rng);
    const auto s = sector_angle(x);
    REQUIRE(s);
    CHECK(*s <= rho + 1e-8);
    double widest = 0.0;
    for (const auto z : numerical_range(x, 4096).boundary) widest = std::max(widest, std::abs(std::arg(z)));
    CHECK(widest <= *s + 1e-8);
    CHECK(*s - widest <= 1e-3);
    CHECK(is_accretive(x).holds);
  }
}

TEST_CASE("sectorial elements satisfy the sec^2 bound") {
  Rng rng(24);
  for (double rho : {std::numbers::pi / 8, std::numbers::pi / 4, std::numbers::pi / 3}) {
    for (int t = 0; t < 30; ++t) {
      const auto x = gen_sectorial(2 + t % 6, rho, rng);
      const double sec2 = 1.0 / (std::cos(rho) * std::cos(rho));
      const ComplexMatrix m = op_norm(real_part(x)) * sec2 * (x + x.adjoint()) - x.adjoint() * x;
      CHECK(min_eig(m) >= -1e-6 * op_norm(x) * op_norm(x));
    }
  }
}

TEST_CASE("roots of accretive elements have a c-certificate") {
  Rng rng(25);
  for (int t = 0; t < 20; ++t) {
    const auto x = gen_accretive(2 + t % 5, rng);
    for (double a : {0.2, 0.5, 0.8}) CHECK(c_certificate(power(x, a).value));
  }
}

TEST_CASE("near_positive_report examples") {
  auto r = near_positive_report(ComplexMatrix::diagonal({1.0, 0.5}), 1e-12);
  CHECK(r.accretive);
  CHECK(r.im_norm == 0.0);
  CHECK(r.within_eps);
  r = near_positive_report(I1 * ComplexMatrix::identity(2), 0.5);
  CHECK(r.accretive);
  CHECK(r.im_norm == doctest::Approx(1.0));
  CHECK_FALSE(r.within_eps);
  r = near_positive_report(power(0.5 * ComplexMatrix::identity(2), 1.0 / 8).value, 1e-12);
  CHECK(r.im_norm <= 1e-15);
  CHECK(r.within_eps);
}

TEST_CASE("numerical_range examples") {
  const auto id = numerical_range(ComplexMatrix::identity(2), 16);
  for (std::size_t k = 0; k < id.thetas.size(); ++k) CHECK(id.support[k] == doctest::Approx(std::cos(id.thetas[k])));
  const auto d = numerical_range(ComplexMatrix::diagonal({1.0, I1}), 8);
  CHECK(d.support[0] == doctest::Approx(1.0));
  CHECK(d.support[2] == doctest::Approx(1.0));
  const auto j = numerical_range(ComplexMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}}), 720);
  for (double h : j.support) CHECK(h == doctest::Approx(0.5));
  CHECK_THROWS_AS(numerical_range(ComplexMatrix::identity(2), 4), InputError);
}

TEST_CASE("numerical range invariants") {
  Rng rng(26);
  for (int t = 0; t < 30; ++t) {
    const auto x = gen_gaussian(2 + t % 5, rng);
    const auto w = numerical_range(x, 64);
    const auto eig = eigen_general(x);
    for (std::size_t k = 0; k < w.thetas.size(); ++k) {
      const cplx rot = std::polar(1.0, -w.thetas[k]);
      for (const auto z : w.boundary) CHECK((rot * z).real() <= w.support[k] + 1e-8);
      for (const auto lam : eig.values) CHECK((rot * lam).real() <= w.support[k] + 1e-8);
    }
    // Vector states lie inside every supporting half-plane.
    for (int s = 0; s < 20; ++s) {
      ComplexMatrix v(x.rows(), 1);
      for (auto& c : v.entries()) c = rng.complex_normal();
      v = v / v.frobenius_norm();
      const cplx z = (v.adjoint() * x * v)(0, 0);
      for (std::size_t k = 0; k < w.thetas.size(); ++k)
        CHECK((std::polar(1.0, -w.thetas[k]) * z).real() <= w.support[k] + 1e-8);
    }
  }
}

TEST_CASE("numerical range matches the real part spectrum") {
  Rng rng(27);
  for (int t = 0; t < 30; ++t) {
    const auto x = gen_gaussian(2 + t % 6, rng);
    const auto w = numerical_range(x, 720);
    const auto e = herm_eig(real_part(x));
    CHECK(std::abs(e.values.back() - w.support[0]) <= 1e-9);
    CHECK(std::abs(e.values.front() + w.support[360]) <= 1e-9);
  }
}

TEST_CASE("sector membership implies accretivity") {
  Rng rng(28);
  for (int t = 0; t < 100; ++t) {
    const auto x = gen_gaussian(2 + t % 4, rng) + rng.uniform(0.0, 4.0) * ComplexMatrix::identity(2 + t % 4);
    const auto s = sector_angle(x);
    if (s) CHECK(is_accretive(x).holds);
    const auto rep = cone_report(x);
    if (rep.sector_angle) CHECK(rep.accretive_margin >= -Tolerances{}.psd_slack);
    if (rep.half_f_gap >= 0) {
      REQUIRE(rep.c_constant);
      CHECK(*rep.c_constant <= 0.5 + Tolerances{}.psd_slack);
    }
  }
}

TEST_CASE("the F cones are proper") {
  Rng rng(29);
  for (int t = 0; t < 100; ++t) {
    const auto x = (t % 5 == 0) ? ComplexMatrix(3) : gen_gaussian(3, rng) * rng.uniform(1e-3, 1.0);
    bool both = false;
    for (double a = 0.1; a <= 2.0 + 1e-12 && !both; a += 0.1)
      for (double b = 0.1; b <= 2.0 + 1e-12 && !both; b += 0.1)
        both = f_membership(a * x).in_f && f_membership(-b * x).in_f;
    if (both) CHECK(op_norm(x) <= 10 * Tolerances{}.eq_tol);
  }
}

TEST_CASE("is_strictly_real_positive examples") {
  const auto m2 = canned_algebra("full:2");
  CHECK(is_strictly_real_positive(m2, ComplexMatrix::identity(2)));
  CHECK_FALSE(is_strictly_real_positive(m2, ComplexMatrix::diagonal({1.0, I1})));
  const auto e11 = canned_algebra("span:2:E11");
  CHECK(is_strictly_real_positive(e11, ComplexMatrix::diagonal({cplx(1, 1), 0.0})));
  CHECK_THROWS_AS(is_strictly_real_positive(e11, ComplexMatrix::identity(2)), PreconditionError);
  CHECK_THROWS_AS(is_strictly_real_positive(canned_algebra("span:2:E12"), ComplexMatrix(2)), PreconditionError);
}
