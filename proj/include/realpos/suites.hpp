#pragma once

// Property suites behind `realpos verify` and the acceptance binary. Each
// case draws from Rng(seed).split(case index), so any failure is reproducible
// from (suite, seed, case).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "realpos/json_io.hpp"
#include "realpos/matrix.hpp"

namespace realpos {

struct SuiteFailure {
  std::size_t case_index = 0;
  std::uint64_t case_seed = 0;
  double margin = 0.0;  // > 0: amount beyond tolerance
  std::string detail;
  std::string dump_path;  // empty unless a dump directory was given
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<std::size_t> sizes;
  std::size_t cases = 0;
  std::vector<SuiteFailure> failures;
  /// Largest case margin (<= 0 when every case is within tolerance).
  double worst_margin = 0.0;
  bool passed = false;
  /// Rule used for `passed`, e.g. "no failures".
  std::string pass_rule;
  Json notes = Json::object();
  double wall_seconds = 0.0;
  Tolerances tol;
  double solver_tol = 1e-6;
};

struct SuiteOptions {
  std::uint64_t seed = 42;
  std::vector<std::size_t> sizes{2, 3, 4, 5, 6, 7, 8};
  /// 0: the suite's default case count.
  std::size_t cases = 0;
  Tolerances tol;
  /// Failing instances are written here as JSON when set.
  std::optional<std::string> dump_dir;
  /// CSV artifact path for suites that produce one (lemerdy: numerical range).
  std::optional<std::string> csv_out;
};

const std::vector<std::string>& suite_names();

/// Throws InputError for an unknown suite name or empty sizes.
SuiteReport run_suite(const std::string& name, const SuiteOptions& opts = {});

/// Deterministic JSON; wall time is omitted when include_wall_time is false.
Json report_to_json(const SuiteReport& r, bool include_wall_time = true);

}  // namespace realpos
