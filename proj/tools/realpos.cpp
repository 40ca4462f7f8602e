// realpos command-line tool. JSON goes to stdout (and --json-out), CSV to
// --csv-out or stdout. Exit codes: 0 ok, 1 failure / predicate false /
// unconverged, 2 invalid input.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <numbers>
#include <sstream>

#include "realpos/algebra.hpp"
#include "realpos/cones.hpp"
#include "realpos/errors.hpp"
#include "realpos/instances.hpp"
#include "realpos/interp.hpp"
#include "realpos/json_io.hpp"
#include "realpos/powers.hpp"
#include "realpos/projections.hpp"
#include "realpos/random.hpp"
#include "realpos/suites.hpp"
#include "realpos/transforms.hpp"

using namespace realpos;

namespace {

struct Globals {
  std::optional<double> tol;
  std::uint64_t seed = 42;
  std::string json_out;
  std::string csv_out;
};

struct MatrixInput {
  std::string file;
  std::string text;
};

std::string read_file(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json load_json(const std::string& file, const std::string& text, const char* what) {
  if (!file.empty() && !text.empty()) throw InputError(std::string("give either a ") + what + " file or inline JSON, not both");
  if (file.empty() && text.empty()) throw InputError(std::string("a ") + what + " is required");
  return parse_json(text.empty() ? read_file(file) : text);
}

void add_matrix_options(CLI::App* cmd, MatrixInput& in) {
  cmd->add_option("--matrix", in.file, "Matrix JSON file ('-' for stdin)");
  cmd->add_option("--matrix-json", in.text, "Matrix JSON text");
}

ComplexMatrix load_matrix(const MatrixInput& in) { return matrix_from_json(load_json(in.file, in.text, "matrix")); }

// --tol sets the PSD slack; matrix equalities stay at least as strict.
Tolerances tolerances(const Globals& g) {
  Tolerances t;
  if (g.tol) {
    t.psd_slack = *g.tol;
    t.eq_tol = std::min(t.eq_tol, *g.tol);
  }
  t.validate();
  return t;
}

void emit(const Globals& g, const Json& j) {
  const std::string text = j.dump(2);
  std::cout << text << '\n';
  if (!g.json_out.empty()) {
    std::ofstream out(g.json_out);
    if (!out) throw InputError("cannot write " + g.json_out);
    out << text << '\n';
  }
}

std::ostream& csv_stream(const Globals& g, std::ofstream& file) {
  if (g.csv_out.empty()) return std::cout;
  file.open(g.csv_out);
  if (!file) throw InputError("cannot write " + g.csv_out);
  return file;
}

Json projection_to_json(const ProjectionResult& r) {
  return {{"method", std::string(to_string(r.method))},
          {"status", std::string(to_string(r.status))},
          {"iterations", r.iterations},
          {"oracle_residual", r.oracle_residual},
          {"trace", r.trace},
          {"projection", matrix_to_json(r.proj)}};
}

Json ah_to_json(const AHResult& r) {
  return {{"a_h", algebra_to_json(r.a_h)},
          {"q", matrix_to_json(r.q)},
          {"maximal", r.maximal},
          {"accretive_samples", r.accretive_samples},
          {"max_sample_residual", r.max_sample_residual},
          {"warning", r.warning}};
}

std::vector<std::size_t> parse_sizes(const std::string& s) {
  std::vector<std::size_t> out;
  const auto dots = s.find("..");
  try {
    if (dots != std::string::npos) {
      const std::size_t lo = std::stoul(s.substr(0, dots)), hi = std::stoul(s.substr(dots + 2));
      if (lo > hi) throw InputError("--sizes: empty range " + s);
      for (std::size_t n = lo; n <= hi; ++n) out.push_back(n);
    } else {
      std::stringstream ss(s);
      for (std::string tok; std::getline(ss, tok, ',');) out.push_back(std::stoul(tok));
    }
  } catch (const std::logic_error&) {
    throw InputError("--sizes: expected 'lo..hi' or a comma list, got '" + s + "'");
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"realpos: real-positive cones, fractional powers, projections and interpolation for matrix algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--tol", g.tol, "PSD slack for cone predicates (equality tolerance never looser)")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for all randomness");
  app.add_option("--json-out", g.json_out, "Also write the JSON result here");
  app.add_option("--csv-out", g.csv_out, "Write CSV output here instead of stdout");

  int code = 0;

  auto* check = app.add_subcommand("check", "Cone report: accretive margin, norm, F gaps, C constant, sector angle");
  MatrixInput check_in;
  add_matrix_options(check, check_in);
  std::string cone;
  check->add_option("--cone", cone, "Exit 1 unless the matrix lies in this cone")
      ->check(CLI::IsMember({"accretive", "F", "half-F", "c", "sectorial"}));
  check->callback([&] {
    const auto tol = tolerances(g);
    const auto x = load_matrix(check_in);
    const auto r = cone_report(x, tol);
    Json j = cone_report_to_json(r);
    j["accretive"] = r.accretive_margin >= -tol.psd_slack;
    if (!cone.empty()) {
      bool in = false;
      if (cone == "accretive") in = is_accretive(x, tol).holds;
      if (cone == "F") in = f_membership(x, tol).in_f;
      if (cone == "half-F") in = f_membership(x, tol).in_half_f;
      if (cone == "c") in = c_certificate(x, tol).has_value();
      if (cone == "sectorial") in = r.sector_angle && *r.sector_angle < std::numbers::pi / 2 - tol.psd_slack;
      j["cone"] = cone;
      j["member"] = in;
      if (!in) code = 1;
    }
    emit(g, j);
  });

  auto* transform = app.add_subcommand("transform", "Cayley, F or inverse-F transform");
  MatrixInput tr_in;
  add_matrix_options(transform, tr_in);
  std::string op;
  transform->add_option("--op", op, "Transform")->required()->check(CLI::IsMember({"cayley", "f", "finv"}));
  transform->callback([&] {
    const auto tol = tolerances(g);
    const auto x = load_matrix(tr_in);
    Json j{{"op", op}};
    if (op == "cayley") j["value"] = matrix_to_json(cayley(x, tol));
    if (op == "f") j["value"] = matrix_to_json(f_transform(x, tol));
    if (op == "finv") {
      const auto r = f_inverse(x, tol);
      j["value"] = matrix_to_json(r.value);
      j["outside_half_f"] = r.outside_half_f;
    }
    emit(g, j);
  });

  auto* pow = app.add_subcommand("power", "Principal fractional power of an accretive matrix");
  MatrixInput pow_in;
  add_matrix_options(pow, pow_in);
  double alpha = 0.5;
  std::string method = "auto";
  int nodes = 128;
  pow->add_option("--alpha", alpha, "Exponent")->required();
  pow->add_option("--method", method, "Method")->check(CLI::IsMember({"auto", "spectral", "balakrishnan", "series"}));
  pow->add_option("--nodes", nodes, "Quadrature nodes (balakrishnan) or series terms (series)")->check(CLI::PositiveNumber);
  pow->callback([&] {
    const auto tol = tolerances(g);
    const auto x = load_matrix(pow_in);
    PowerResult r;
    if (method == "auto") r = power(x, alpha, tol);
    if (method == "spectral") r = power_spectral(x, alpha, tol);
    if (method == "balakrishnan") r = power_balakrishnan(x, alpha, nodes, tol);
    if (method == "series") {
      const double k = 1.0 / alpha;
      if (!(alpha > 0.0) || std::abs(k - std::round(k)) > 1e-12) throw InputError("series needs alpha = 1/k");
      r = root_series(x, static_cast<int>(std::round(k)), nodes, tol);
    }
    emit(g, {{"alpha", alpha},
             {"method", std::string(to_string(r.method))},
             {"est_error", r.est_error},
             {"nodes_or_terms", r.nodes_or_terms},
             {"certified", r.certified},
             {"value", matrix_to_json(r.value)}});
  });

  auto* project = app.add_subcommand(
      "project", "Support or peak projection (in finite dimensions every projection is open, closed and compact)");
  MatrixInput pr_in;
  add_matrix_options(project, pr_in);
  std::string kind, pmethod = "both";
  project->add_option("--kind", kind, "Projection")->required()->check(CLI::IsMember({"support", "peak"}));
  project->add_option("--method", pmethod, "Method")->check(CLI::IsMember({"iterative", "oracle", "both"}));
  project->callback([&] {
    const auto tol = tolerances(g);
    const auto x = load_matrix(pr_in);
    const ProjectionMethod m = pmethod == "iterative" ? ProjectionMethod::iterative
                               : pmethod == "oracle"  ? ProjectionMethod::oracle
                                                      : ProjectionMethod::both;
    const auto r = kind == "support" ? support_projection(x, m, tol) : peak_projection(x, m, tol);
    Json j = projection_to_json(r);
    j["kind"] = kind;
    emit(g, j);
    if (r.status != ProjectionStatus::converged) code = 1;
  });

  auto* range = app.add_subcommand("range", "Numerical range support function and boundary as CSV");
  MatrixInput rg_in;
  add_matrix_options(range, rg_in);
  std::size_t grid = 720;
  range->add_option("--grid", grid, "Number of angles")->check(CLI::Range(8, 100000));
  range->callback([&] {
    const auto nr = numerical_range(load_matrix(rg_in), grid);
    std::ofstream file;
    std::ostream& out = csv_stream(g, file);
    out << "theta,support,boundary_re,boundary_im\n";
    out.precision(17);
    for (std::size_t k = 0; k < nr.thetas.size(); ++k)
      out << nr.thetas[k] << ',' << nr.support[k] << ',' << nr.boundary[k].real() << ',' << nr.boundary[k].imag() << '\n';
  });

  auto* alg = app.add_subcommand("algebra", "Generate algebras, compute A_H, amplify");
  alg->require_subcommand(1);
  std::string alg_file, alg_text;
  auto algebra_options = [&](CLI::App* c) {
    c->add_option("--algebra", alg_file, "Algebra JSON file ('-' for stdin)");
    c->add_option("--algebra-json", alg_text, "Algebra JSON text or a canned name such as upper:3");
  };
  auto load_algebra = [&] {
    if (!alg_text.empty() && alg_text.front() != '{' && alg_text.front() != '"') return canned_algebra(alg_text);
    return algebra_from_json(load_json(alg_file, alg_text, "algebra"));
  };
  auto* gen = alg->add_subcommand("generate", "Random algebra of a given kind");
  std::string gkind;
  std::size_t gn = 3;
  gen->add_option("--kind", gkind, "Kind")->required()->check(CLI::IsMember({"full", "diag", "upper", "blockupper", "oa"}));
  gen->add_option("--n", gn, "Matrix size")->check(CLI::PositiveNumber);
  gen->callback([&] { emit(g, algebra_to_json(gen_algebra(gkind, gn, g.seed))); });
  auto* ah = alg->add_subcommand("a_h", "A_H = qAq with q the largest projection of A");
  algebra_options(ah);
  ah->callback([&] { emit(g, ah_to_json(a_h(load_algebra(), g.seed, tolerances(g)))); });
  auto* amp = alg->add_subcommand("amplify", "M_k(A)");
  algebra_options(amp);
  std::size_t k = 2;
  amp->add_option("--k", k, "Block size")->check(CLI::PositiveNumber);
  amp->callback([&] { emit(g, algebra_to_json(amplify(load_algebra(), k))); });

  auto* gen_m = app.add_subcommand("gen", "Seeded random matrix");
  std::string mkind;
  std::size_t mn = 3;
  double rho = std::numbers::pi / 4;
  gen_m->add_option("--kind", mkind, "Kind")->required()->check(CLI::IsMember({"accretive", "half-f", "sectorial", "unitary"}));
  gen_m->add_option("--n", mn, "Matrix size")->check(CLI::PositiveNumber);
  gen_m->add_option("--rho", rho, "Sector half-angle for sectorial")->check(CLI::Range(0.0, std::numbers::pi / 2));
  gen_m->callback([&] {
    if (mn > max_dim()) throw DimensionError("n exceeds REALPOS_MAX_DIM = " + std::to_string(max_dim()));
    Rng rng(g.seed);
    ComplexMatrix m;
    if (mkind == "accretive") m = gen_accretive(mn, rng);
    if (mkind == "half-f") m = gen_half_f(mn, rng);
    if (mkind == "sectorial") m = gen_sectorial(mn, rho, rng);
    if (mkind == "unitary") m = gen_unitary(mn, rng);
    emit(g, matrix_to_json(m));
  });

  auto* interp = app.add_subcommand(
      "interp", "Solve an interpolation problem (verdicts are feasible or unconverged, never infeasible)");
  std::string prob_file, prob_text, theorem;
  InterpOptions io;
  bool no_warm = false;
  interp->add_option("--problem", prob_file, "Problem JSON file ('-' for stdin)");
  interp->add_option("--problem-json", prob_text, "Problem JSON text");
  interp->add_option("--theorem", theorem, "Overrides the problem's theorem")->check(CLI::IsMember(interp_theorems()));
  interp->add_option("--retries", io.retries, "Engine attempts before the warm start")->check(CLI::Range(1, 20));
  interp->add_flag("--no-warm-start", no_warm, "Disable the closed-form warm start");
  interp->add_flag("--dykstra", io.dykstra, "Use Dykstra-corrected projections");
  interp->add_option("--solver-tol", io.solver_tol, "Engine residual target")->check(CLI::PositiveNumber);
  interp->callback([&] {
    const Json pj = load_json(prob_file, prob_text, "problem");
    InterpProblem p = problem_from_json(pj);
    if (!theorem.empty()) p.theorem = theorem;
    io.seed = pj.contains("seed") && pj["seed"].is_number_unsigned() ? pj["seed"].get<std::uint64_t>() : g.seed;
    io.allow_warm_start = !no_warm;
    if (g.tol) io.solver_tol = *g.tol;
    Json j{{"theorem", p.theorem}};
    try {
      const auto r = solve_interp(p, io);
      const Json body = interp_result_to_json(r);
      for (const auto& [key, v] : body.items()) j[key] = v;
      if (!r.verified || r.engine.verdict != SolveStatus::feasible) code = 1;
    } catch (const VerificationError& e) {
      j["verified"] = false;
      j["error"] = e.what();
      code = 1;
    }
    emit(g, j);
  });

  auto* verify = app.add_subcommand("verify", "Run property suites and emit reports");
  std::vector<std::string> suites;
  std::string sizes = "2..8", dump_dir;
  std::size_t cases = 0;
  verify->add_option("--suite", suites, "Suite name(s); default all")->check(CLI::IsMember(suite_names()));
  verify->add_option("--sizes", sizes, "Matrix sizes: lo..hi or a comma list");
  verify->add_option("--cases", cases, "Cases per suite (0: suite default)");
  verify->add_option("--dump-dir", dump_dir, "Write failing instances here");
  verify->add_flag("--list", [&](std::int64_t) {
    for (const auto& s : suite_names()) std::cout << s << '\n';
    throw CLI::Success();
  }, "List suites and exit");
  verify->callback([&] {
    SuiteOptions o;
    o.seed = g.seed;
    o.sizes = parse_sizes(sizes);
    o.cases = cases;
    o.tol = tolerances(g);
    if (!dump_dir.empty()) o.dump_dir = dump_dir;
    if (!g.csv_out.empty()) o.csv_out = g.csv_out;
    Json reports = Json::array();
    bool all = true;
    for (const auto& s : suites.empty() ? suite_names() : suites) {
      const auto r = run_suite(s, o);
      std::fprintf(stderr, "%-20s %s  cases=%zu failures=%zu  %.2fs\n", s.c_str(), r.passed ? "PASS" : "FAIL", r.cases,
                   r.failures.size(), r.wall_seconds);
      all = all && r.passed;
      reports.push_back(report_to_json(r));
    }
    emit(g, {{"passed", all}, {"reports", reports}});
    if (!all) code = 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const InputError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const DimensionError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return code;
}
