#include <chrono>

#include "doctest.h"
#include "realpos/feasibility.hpp"
#include "realpos/random.hpp"

using namespace realpos;

TEST_CASE("equality-only problems") {
  const auto up = canned_algebra("upper:2");
  const auto r = ComplexMatrix::from_rows({{1.0, 2.0}, {0.0, cplx(0, 3)}});
  FeasibilityProblem p{up, {{LinearMap::identity(2), r, "a = R"}}, {}, {}};
  auto sol = solve_feasibility(p);
  CHECK(sol.verdict == SolveStatus::feasible);
  CHECK(sol.iterations == 1);
  CHECK(approx_equal(sol.value, r, 1e-12).holds);

  const auto outside = ComplexMatrix::from_rows({{1.0, 2.0}, {0.5, 0.0}});
  p.equalities[0].target = outside;
  sol = solve_feasibility(p);
  CHECK(sol.verdict == SolveStatus::unconverged);
  REQUIRE(sol.residuals.size() == 1);
  CHECK(sol.residuals[0].value == doctest::Approx((outside - up.project(outside)).frobenius_norm()));
}

TEST_CASE("malformed problems") {
  const auto up = canned_algebra("upper:2");
  CHECK_THROWS_AS(solve_feasibility(FeasibilityProblem{up, {}, {}, {}}), InputError);
  FeasibilityProblem p{up, {{LinearMap::identity(3), ComplexMatrix(3), "bad"}}, {}, {}};
  CHECK_THROWS_AS(solve_feasibility(p), InputError);
  FeasibilityProblem q{up, {}, {{LinearMap::identity(2), ComplexMatrix::unit(2, 0, 1), "nonherm"}}, {}};
  CHECK_THROWS_AS(solve_feasibility(q), InputError);
  FeasibilityProblem c{up, {}, {}, {{LinearMap::identity(2), {}, -1.0, "neg"}}};
  CHECK_THROWS_AS(solve_feasibility(c), InputError);
}

TEST_CASE("Urysohn-type instance is feasible") {
  const auto up = canned_algebra("upper:2");
  const auto q = ComplexMatrix::unit(2, 0, 0);
  const auto id = ComplexMatrix::identity(2);
  FeasibilityProblem p{up,
                       {{LinearMap::right(q), q, "aq = q"}, {LinearMap::left(q), q, "qa = q"}},
                       {},
                       {{LinearMap::left(-2.0 * id), id, 1.0, "||I - 2a|| <= 1"}}};
  const auto sol = solve_feasibility(p);
  CHECK(sol.verdict == SolveStatus::feasible);
  const auto& a = sol.value;
  CHECK(op_norm(a * q - q) <= 1e-9);
  CHECK(op_norm(q * a - q) <= 1e-9);
  CHECK(op_norm(id - 2.0 * a) <= 1.0 + 1e-6);
  CHECK(std::abs(a(0, 1)) <= 1e-9);
}

TEST_CASE("spectral constraints on random instances") {
  Rng rng(70);
  for (bool dykstra : {false, true}) {
    int feasible = 0, iters = 0;
    const auto t0 = std::chrono::steady_clock::now();
    for (int t = 0; t < 40; ++t) {
      const std::size_t n = 2 + t % 5;
      const auto a = gen_algebra(t % 2 ? "upper" : "full", n, rng);
      // Re a >= h and ||a|| <= cap with h PSD small enough to be compatible.
      const auto h = 0.5 * gen_psd(n, rng) / std::max(1.0, op_norm(gen_psd(n, rng)));
      const double hn = op_norm(h);
      const auto id = ComplexMatrix::identity(n);
      FeasibilityProblem p{a, {}, {{LinearMap::identity(n), -1.0 * h, "Re a >= h"}},
                           {{LinearMap::identity(n), {}, hn + 0.2, "||a|| <= cap"}}};
      SolverOptions o;
      o.dykstra = dykstra;
      o.seed = t;
      const auto sol = solve_feasibility(p, o);
      iters += sol.iterations;
      if (sol.verdict == SolveStatus::feasible) {
        ++feasible;
        CHECK(min_eig(real_part(sol.value) - h) >= -1e-6);
        CHECK(op_norm(sol.value) <= hn + 0.2 + 1e-6);
        CHECK(contains(a, sol.value).holds);
      }
      (void)id;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    MESSAGE("dykstra=" << dykstra << " feasible " << feasible << "/40, iterations " << iters << ", " << secs << " s");
    CHECK(feasible == 40);
  }
}
