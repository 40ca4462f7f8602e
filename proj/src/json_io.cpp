#include "realpos/json_io.hpp"

#include <cmath>

#include "realpos/random.hpp"

namespace realpos {

namespace {

double finite_number(const Json& v, const char* what) {
  if (!v.is_number()) throw InputError(std::string(what) + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw InputError(std::string(what) + ": non-finite number");
  return d;
}

cplx complex_from_json(const Json& v, const char* what) {
  if (v.is_number()) return finite_number(v, what);
  if (!v.is_array() || v.size() != 2) throw InputError(std::string(what) + ": expected [re, im]");
  return {finite_number(v[0], what), finite_number(v[1], what)};
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json entries = Json::array();
  for (const auto& z : m.entries()) entries.push_back({z.real(), z.imag()});
  return {{"n", m.rows()}, {"entries", std::move(entries)}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("entries")) {
    throw InputError("matrix JSON: expected {\"n\": .., \"entries\": [[re, im], ...]}");
  }
  if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1) throw InputError("matrix JSON: n must be >= 1");
  const auto n = static_cast<std::size_t>(j["n"].get<long long>());
  if (n > max_dim()) {
    throw DimensionError("matrix JSON: n = " + std::to_string(n) + " exceeds the cap " + std::to_string(max_dim()));
  }
  const Json& e = j["entries"];
  if (!e.is_array() || e.size() != n * n) throw InputError("matrix JSON: entries must hold n*n values");
  std::vector<cplx> data;
  data.reserve(n * n);
  for (const auto& v : e) data.push_back(complex_from_json(v, "matrix JSON entry"));
  return ComplexMatrix(n, n, std::move(data));
}

Json algebra_to_json(const MatrixAlgebra& a) {
  Json basis = Json::array();
  for (const auto& b : a.basis) basis.push_back(matrix_to_json(b));
  return {{"ambient", a.ambient_dim},
          {"label", a.label},
          {"dim", a.dim()},
          {"contains_identity", a.contains_identity},
          {"basis", std::move(basis)}};
}

MatrixAlgebra algebra_from_json(const Json& j) {
  if (j.is_string()) return canned_algebra(j.get<std::string>());
  if (!j.is_object()) throw InputError("algebra JSON: expected a name or an object");
  if (j.contains("canned")) {
    if (!j["canned"].is_string()) throw InputError("algebra JSON: canned must be a string");
    return canned_algebra(j["canned"].get<std::string>());
  }
  auto matrices = [&](const char* key) {
    if (!j[key].is_array() || j[key].empty()) throw InputError(std::string("algebra JSON: ") + key + " must be a non-empty list");
    std::vector<ComplexMatrix> out;
    for (const auto& m : j[key]) out.push_back(matrix_from_json(m));
    for (const auto& m : out)
      if (m.rows() != out.front().rows()) throw InputError("algebra JSON: matrices of different sizes");
    for (const char* dim_key : {"ambient", "n"}) {
      if (j.contains(dim_key) && (!j[dim_key].is_number_integer() || j[dim_key].get<long long>() !=
                                                                          static_cast<long long>(out.front().rows())))
        throw InputError(std::string("algebra JSON: ") + dim_key + " does not match the matrix size");
    }
    return out;
  };
  if (j.contains("generators")) {
    const auto gens = matrices("generators");
    const std::string mode = j.value("mode", "algebra");
    if (mode != "algebra" && mode != "cstar") throw InputError("algebra JSON: mode must be algebra or cstar");
    return generate_algebra(gens, mode == "cstar" ? GenerationMode::cstar : GenerationMode::algebra,
                            j.value("with_identity", false), j.value("label", ""));
  }
  if (j.contains("basis")) {
    const auto basis = matrices("basis");
    MatrixAlgebra a = span_of(basis.front().rows(), basis, j.value("label", "span"));
    if (closure_residual(a) > 1e-8) throw InputError("algebra JSON: basis span is not closed under products");
    a.contains_identity = contains(a, ComplexMatrix::identity(a.ambient_dim)).holds;
    return a;
  }
  throw InputError("algebra JSON: expected canned, generators or basis");
}

Json cone_report_to_json(const ConeReport& r) {
  return {{"accretive_margin", r.accretive_margin}, {"accretive", r.accretive_margin >= -Tolerances{}.psd_slack},
          {"norm", r.norm},
          {"f_gap", r.f_gap},
          {"half_f_gap", r.half_f_gap},
          {"c_constant", optional_number(r.c_constant)},
          {"sector_angle", optional_number(r.sector_angle)},
          {"im_norm", r.im_norm}};
}

Json solution_to_json(const FeasibilitySolution& s) {
  Json res = Json::array();
  for (const auto& r : s.residuals) res.push_back({{"constraint", r.label}, {"residual", r.value}});
  return {{"verdict", std::string(to_string(s.verdict))},
          {"iterations", s.iterations},
          {"rounds", s.rounds},
          {"residuals", std::move(res)},
          {"value", matrix_to_json(s.value)}};
}

Json interp_result_to_json(const InterpResult& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"check", c.label}, {"value", c.value}, {"limit", c.limit}, {"passed", c.passed()}});
  }
  Json out{{"verified", r.verified},
           {"path", std::string(to_string(r.path))},
           {"attempts", r.attempts},
           {"solution", matrix_to_json(r.value)}};
  if (r.second) out["second"] = matrix_to_json(*r.second);
  out["checks"] = std::move(checks);
  if (r.path != InterpPath::fast_path) out["engine"] = solution_to_json(r.engine);
  return out;
}

Json problem_to_json(const InterpProblem& p) {
  Json out{{"theorem", p.theorem}, {"algebra", algebra_to_json(p.algebra)}};
  auto put = [&](const char* key, const std::optional<ComplexMatrix>& m) {
    if (m) out[key] = matrix_to_json(*m);
  };
  put("q", p.q);
  put("u", p.u);
  put("p", p.p);
  put("b", p.b);
  put("c", p.c);
  if (p.region) {
    Json e = Json::array();
    for (const auto& v : p.region->vertices()) e.push_back({v.real(), v.imag()});
    out["E"] = std::move(e);
  }
  out["eps"] = p.eps;
  return out;
}

InterpProblem problem_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("problem JSON: expected an object");
  if (!j.contains("theorem") || !j["theorem"].is_string()) throw InputError("problem JSON: theorem is required");
  if (!j.contains("algebra")) throw InputError("problem JSON: algebra is required");
  InterpProblem p;
  p.theorem = j["theorem"].get<std::string>();
  p.algebra = algebra_from_json(j["algebra"]);
  auto get = [&](const char* key, std::optional<ComplexMatrix>& m) {
    if (j.contains(key)) m = matrix_from_json(j[key]);
  };
  get("q", p.q);
  get("u", p.u);
  get("p", p.p);
  get("b", p.b);
  get("c", p.c);
  if (j.contains("E")) {
    if (!j["E"].is_array()) throw InputError("problem JSON: E must be a list of [re, im] vertices");
    std::vector<cplx> v;
    for (const auto& z : j["E"]) v.push_back(complex_from_json(z, "problem JSON vertex"));
    p.region.emplace(std::move(v));
  }
  if (j.contains("eps")) p.eps = finite_number(j["eps"], "problem JSON eps");
  if (!(p.eps > 0.0)) throw InputError("problem JSON: eps must be positive");
  return p;
}

}  // namespace realpos
