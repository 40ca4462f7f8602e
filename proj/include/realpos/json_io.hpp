#pragma once

// JSON encodings shared by the CLI and the suite reports.
//
// Matrix:  {"n": 2, "entries": [[re, im], ...]}  (row-major, n*n pairs)
// Algebra: "upper:3" (canned name), {"canned": "upper:3"},
//          {"ambient": .., "generators": [matrix, ...], "mode": "algebra"|"cstar",
//           "with_identity": bool}, or {"ambient": .., "basis": [matrix, ...]}
//          (a span that must already be closed under products). "n" is
//          accepted in place of "ambient"; either must match the matrices.
// Problem: {"theorem": .., "algebra": .., "q"/"u"/"p"/"b"/"c": matrix,
//           "E": [[re, im], ...], "eps": ..}

#include <json.hpp>

#include "realpos/algebra.hpp"
#include "realpos/cones.hpp"
#include "realpos/feasibility.hpp"
#include "realpos/instances.hpp"
#include "realpos/interp.hpp"
#include "realpos/matrix.hpp"

namespace realpos {

using Json = nlohmann::ordered_json;

Json matrix_to_json(const ComplexMatrix& m);
/// Throws InputError on malformed input, DimensionError when n exceeds the
/// dimension cap.
ComplexMatrix matrix_from_json(const Json& j);

Json algebra_to_json(const MatrixAlgebra& a);
MatrixAlgebra algebra_from_json(const Json& j);

Json cone_report_to_json(const ConeReport& r);
Json solution_to_json(const FeasibilitySolution& s);
Json interp_result_to_json(const InterpResult& r);

Json problem_to_json(const InterpProblem& p);
InterpProblem problem_from_json(const Json& j);

/// Parses text, mapping parse errors to InputError.
Json parse_json(const std::string& text);

}  // namespace realpos
