#include "doctest.h"
#include "realpos/errors.hpp"
#include "realpos/suites.hpp"

#include <filesystem>

using namespace realpos;

TEST_CASE("suite registry") {
  CHECK(suite_names().size() == 14);
  CHECK_THROWS_AS(run_suite("unknown"), InputError);
  SuiteOptions o;
  o.sizes.clear();
  CHECK_THROWS_AS(run_suite("f-bijection", o), InputError);
}

TEST_CASE("small runs pass and are reproducible") {
  SuiteOptions o;
  o.cases = 6;
  o.sizes = {2, 3};
  for (const char* name : {"f-bijection", "sector-bound", "vav", "oa-unital"}) {
    const auto a = run_suite(name, o);
    CHECK_MESSAGE(a.passed, name);
    CHECK(a.cases == 6);
    const auto b = run_suite(name, o);
    CHECK(report_to_json(a, false).dump() == report_to_json(b, false).dump());
  }
}

TEST_CASE("lemerdy reproduces the counterexample") {
  const auto r = run_suite("lemerdy");
  CHECK(r.passed);
  CHECK(r.notes["counterexample_reproduced"] == true);
  CHECK(r.notes["min_monotonicity_margin"].get<double>() <= -1e-3);
}

TEST_CASE("interp suite notes per-theorem rates") {
  SuiteOptions o;
  o.cases = 7;
  o.sizes = {2, 3, 8};
  const auto r = run_suite("interp", o);
  CHECK(r.sizes == std::vector<std::size_t>{2, 3});
  CHECK(r.passed);
  CHECK(r.notes["per_theorem"].size() == 7);
}

TEST_CASE("failures are dumped") {
  // Tolerances at the floating-point floor make the peak iteration miss its
  // convergence test, so every case fails and is written out.
  SuiteOptions o;
  o.cases = 3;
  o.sizes = {3};
  o.tol.eq_tol = 1e-300;
  o.tol.psd_slack = 1e-300;
  const auto dir = std::filesystem::temp_directory_path() / "realpos-suite-dump";
  std::filesystem::remove_all(dir);
  o.dump_dir = dir.string();
  const auto r = run_suite("peak", o);
  CHECK_FALSE(r.passed);
  REQUIRE(r.failures.size() == 3);
  CHECK(r.worst_margin > 0.0);
  for (const auto& f : r.failures) CHECK(std::filesystem::exists(f.dump_path));
  const auto j = report_to_json(r);
  CHECK(j["failure_count"] == 3);
  CHECK(j.contains("wall_seconds"));
  std::filesystem::remove_all(dir);
}
