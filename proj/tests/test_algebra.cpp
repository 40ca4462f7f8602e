#include <random>

#include "doctest.h"
#include "realpos/algebra.hpp"
#include "test_support.hpp"

using namespace realpos;
using realpos::testing::random_accretive;

namespace {
const ComplexMatrix E11 = ComplexMatrix::unit(2, 0, 0);
const ComplexMatrix E12 = ComplexMatrix::unit(2, 0, 1);
const ComplexMatrix E22 = ComplexMatrix::unit(2, 1, 1);
}  // namespace

TEST_CASE("generate_algebra examples") {
  CHECK(generate_algebra({E12}, GenerationMode::algebra, false).dim() == 1);
  const auto c = generate_algebra({E12}, GenerationMode::cstar, false);
  CHECK(c.dim() == 4);
  CHECK(c.contains_identity);
  const auto scalars = generate_algebra({ComplexMatrix::identity(2)}, GenerationMode::algebra, false);
  CHECK(scalars.dim() == 1);
  CHECK(scalars.contains_identity);
  CHECK_THROWS_AS(generate_algebra({E12, ComplexMatrix::identity(3)}, GenerationMode::algebra, false),
                  DimensionError);
}

TEST_CASE("generated algebras are orthonormal and closed") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + t % 4;
    const auto x = random_accretive(n, rng);
    auto a = generate_algebra({x}, GenerationMode::algebra, false);
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < a.dim(); ++j)
        CHECK(std::abs(inner(a.basis[i], a.basis[j]) - (i == j ? 1.0 : 0.0)) <= 1e-10);
    CHECK(closure_residual(a) <= 1e-8);
    const auto again = generate_algebra(a.basis, GenerationMode::algebra, false);
    CHECK(span_distance(a, again) <= 1e-8);
  }
}

TEST_CASE("contains examples") {
  const auto a = span_of(2, {E12});
  auto v = contains(a, E12);
  CHECK(v.holds);
  CHECK(v.margin <= 1e-15);
  v = contains(a, E11);
  CHECK_FALSE(v.holds);
  CHECK(v.margin == doctest::Approx(1.0));
  std::mt19937_64 rng(1);
  CHECK(contains(canned_algebra("full:2"), realpos::testing::random_matrix(2, rng)).holds);
}

TEST_CASE("identity_of examples") {
  auto e = identity_of(canned_algebra("upper:2"));
  REQUIRE(e);
  CHECK(approx_equal(*e, ComplexMatrix::identity(2), 1e-12).holds);
  CHECK_FALSE(identity_of(span_of(2, {E12})));
  e = identity_of(span_of(2, {E11}));
  REQUIRE(e);
  CHECK(approx_equal(*e, E11, 1e-12).holds);
}

TEST_CASE("non-selfadjoint identity is not a unit projection") {
  const auto a = span_of(2, {E11 + E12});
  const auto e = identity_of(a);
  REQUIRE(e);
  CHECK(approx_equal(*e, E11 + E12, 1e-12).holds);
  CHECK_FALSE(unit_projection(a));
}

TEST_CASE("unitize examples") {
  CHECK(span_distance(unitize(span_of(2, {E12})), span_of(2, {ComplexMatrix::identity(2), E12})) <= 1e-12);
  CHECK(unitize(canned_algebra("full:2")).dim() == 4);
  CHECK(span_distance(unitize(span_of(2, {E11})), span_of(2, {E11, E22})) <= 1e-12);
}

TEST_CASE("a_h on the worked algebras") {
  const auto upper = canned_algebra("upper:2");
  auto r = a_h(upper, 1);
  CHECK(span_distance(r.a_h, upper) <= 1e-10);
  CHECK(approx_equal(r.q, ComplexMatrix::identity(2), 1e-10).holds);
  CHECK(r.accretive_samples > 0);
  CHECK(r.max_sample_residual <= 1e-6);

  r = a_h(span_of(2, {E12}), 1);
  CHECK(r.a_h.dim() == 0);
  CHECK(r.q.max_abs() == 0.0);
  CHECK_FALSE(r.warning.empty());

  r = a_h(span_of(2, {E11, E12}), 1);
  CHECK(span_distance(r.a_h, span_of(2, {E11})) <= 1e-10);
  CHECK(approx_equal(r.q, E11, 1e-10).holds);
}

TEST_CASE("a_h q is a fixed point") {
  for (const char* name : {"upper:3", "blockupper:1,2", "span:3:E11,E12,E13", "span:3:E12,E13,E23"}) {
    const auto a = canned_algebra(name);
    const auto r = a_h(a, 3);
    CHECK(is_projection(r.q, 1e-10).holds);
    CHECK(contains(a, r.q).holds);
    const auto again = a_h(r.a_h, 4);
    CHECK(approx_equal(again.q, r.q, 1e-9).holds);
    CHECK(span_distance(again.a_h, r.a_h) <= 1e-9);
  }
}

TEST_CASE("amplify examples and the amplification law") {
  CHECK(amplify(span_of(1, {ComplexMatrix::identity(1)}), 2).dim() == 4);
  CHECK(amplify(span_of(2, {E12}), 2).dim() == 4);
  CHECK(amplify(canned_algebra("upper:2"), 2).dim() == 12);
  CHECK_THROWS_AS(amplify(canned_algebra("full:8"), 9), DimensionError);

  for (const auto& a : {span_of(2, {E11, E12}), canned_algebra("upper:2"), span_of(2, {E12})}) {
    for (std::size_t k : {2u, 3u}) {
      const auto lhs = a_h(amplify(a, k), 9, {}, {4, 50}).a_h;
      const auto rhs = amplify(a_h(a, 9).a_h, k);
      CHECK(span_distance(lhs, rhs) <= 1e-6);
    }
  }
}

TEST_CASE("algebras generated by accretive elements are unital") {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + t % 5;
    std::vector<ComplexMatrix> s;
    for (int k = 0; k <= t % 3; ++k) s.push_back(random_accretive(n, rng));
    CHECK(identity_of(generate_algebra(s, GenerationMode::algebra, false)));
  }
}

TEST_CASE("canned algebra names") {
  CHECK(canned_algebra("full:3").dim() == 9);
  CHECK(canned_algebra("upper:3").dim() == 6);
  CHECK(canned_algebra("diag:3").dim() == 3);
  CHECK(canned_algebra("blockupper:1,2").dim() == 7);
  CHECK(canned_algebra("span:2:E11,E12").dim() == 2);
  CHECK_THROWS_AS(canned_algebra("span:2:E12,E21"), InputError);
  CHECK_THROWS_AS(canned_algebra("weird:2"), InputError);
}
