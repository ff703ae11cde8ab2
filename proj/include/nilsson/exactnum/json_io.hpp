#pragma once

#include <json.hpp>

#include "nilsson/exactnum/bigfloat.hpp"
#include "nilsson/exactnum/number_field.hpp"
#include "nilsson/exactnum/rational.hpp"

namespace nilsson {

using json = nlohmann::json;

// Rationals travel as exact decimal strings "p/q"; integers are accepted too.
json rational_to_json(const Rational& q);
Rational rational_from_json(const json& j);

// Ascending integer coefficients.
json field_to_json(const NumberField& field);
FieldPtr field_from_json(const json& minpoly);

// {"minpoly": [2,0,1], "coords": [["329","729"],["-460","729"]]}
json nf_to_json(const NumberFieldElement& x);
// Coordinates only, as (numerator, denominator) string pairs.
json nf_coords_to_json(const NumberFieldElement& x);
// Accepts a full literal, a bare coordinate array (interpreted in `field`),
// or a rational string/integer (lifted into `field`).
NumberFieldElement nf_from_json(const json& j, const FieldPtr& field = NumberField::rationals());

// {"re": "...", "im": "...", "prec": bits}
json complex_to_json(const BigComplex& z);
BigComplex complex_from_json(const json& j, long default_precision);
bool is_complex_literal(const json& j);

}  // namespace nilsson
