#pragma once

#include "minsurf/polynomial.hpp"

#include <nlohmann/json.hpp>

namespace minsurf {

using Json = nlohmann::ordered_json;

// {"nvars": int, "names": [string], "terms": [{"num": str, "den": str, "exps": [int]}]}
// Terms in descending graded-lex order; num/den are base-10 strings.
Json to_json(const Polynomial& p, const VariableNaming& naming);
Json to_json(const Polynomial& p);

// Validates the schema and returns the canonical polynomial. Throws UsageError.
Polynomial polynomial_from_json(const Json& j);

}  // namespace minsurf
