#pragma once

#include <variant>

#include "nilsson/exactnum/json_io.hpp"
#include "nilsson/series/expansion.hpp"

namespace nilsson {

using AnyExpansion = std::variant<ExactExpansion, NumericExpansion>;

// Expansion documents:
//   {"mode": "exact" | "numeric", "minpoly": [...], "root": i, "r_hint": r,
//    "lambdas": [...], "terms": [{"lambda_index", "alpha": "p/q", "beta",
//    "stokes", "g": [...], "normalized"}], "d": d, "S": ["p/q", ...]}
// Exact coefficients are rational strings (field Q) or coordinate pairs in
// the field given by "minpoly"; numeric ones are {re, im, prec} literals.
json expansion_to_json(const ExactExpansion& e);
json expansion_to_json(const NumericExpansion& e);
json expansion_to_json(const AnyExpansion& e);
AnyExpansion expansion_from_json(const json& j, long default_precision = 256);

// Exact scalar in the encoding used inside expansion documents.
json exact_scalar_to_json(const NumberFieldElement& x);

}  // namespace nilsson
