#include "nilsson/exactnum/json_io.hpp"

#include "nilsson/error.hpp"

namespace nilsson {

json rational_to_json(const Rational& q) { return q.str(); }

Rational rational_from_json(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw UserError("expected a rational string, got " + j.dump());
}

json field_to_json(const NumberField& field) {
  json out = json::array();
  for (const auto& c : field.minpoly()) {
    if (c.fits_slong_p()) out.push_back(c.get_si());
    else out.push_back(c.get_str());
  }
  return out;
}

FieldPtr field_from_json(const json& minpoly) {
  if (!minpoly.is_array()) throw UserError("minpoly must be an array of integers");
  std::vector<Integer> coeffs;
  for (const auto& c : minpoly) {
    Rational q = rational_from_json(c);
    if (!q.is_integer()) throw UserError("minpoly coefficients must be integers");
    coeffs.push_back(q.num());
  }
  return NumberField::create(std::move(coeffs));
}

json nf_coords_to_json(const NumberFieldElement& x) {
  json coords = json::array();
  for (const auto& c : x.coords()) coords.push_back(json::array({c.num().get_str(), c.den().get_str()}));
  return coords;
}

json nf_to_json(const NumberFieldElement& x) {
  return json{{"minpoly", field_to_json(*x.field())}, {"coords", nf_coords_to_json(x)}};
}

namespace {

std::vector<Rational> coords_from_json(const json& coords) {
  if (!coords.is_array()) throw UserError("coords must be an array");
  std::vector<Rational> out;
  for (const auto& c : coords) {
    if (c.is_array()) {
      if (c.size() != 2) throw UserError("coordinate pairs must be [numerator, denominator]");
      Rational num = rational_from_json(c[0]);
      Rational den = rational_from_json(c[1]);
      if (!num.is_integer() || !den.is_integer()) throw UserError("coordinate pair entries must be integers");
      if (den.is_zero()) throw UserError("coordinate with zero denominator");
      out.push_back(num / den);
    } else {
      out.push_back(rational_from_json(c));
    }
  }
  return out;
}

}  // namespace

NumberFieldElement nf_from_json(const json& j, const FieldPtr& field) {
  if (j.is_object()) {
    if (!j.contains("coords")) throw UserError("number field literal needs \"coords\"");
    FieldPtr f = j.contains("minpoly") ? field_from_json(j.at("minpoly")) : field;
    return NumberFieldElement(f, coords_from_json(j.at("coords")));
  }
  if (j.is_array()) return NumberFieldElement(field, coords_from_json(j));
  return NumberFieldElement(field, rational_from_json(j));
}

json complex_to_json(const BigComplex& z) {
  return json{{"re", z.real().str()}, {"im", z.imag().str()}, {"prec", z.precision()}};
}

bool is_complex_literal(const json& j) { return j.is_object() && j.contains("re"); }

BigComplex complex_from_json(const json& j, long default_precision) {
  if (!is_complex_literal(j)) {
    if (j.is_string() || j.is_number_integer()) return BigComplex(rational_from_json(j), default_precision);
    if (j.is_number_float()) return BigComplex(BigFloat(j.get<double>(), default_precision));
    throw UserError("expected a complex literal {re, im, prec}, got " + j.dump());
  }
  long prec = j.value("prec", default_precision);
  auto part = [&](const char* key) {
    if (!j.contains(key)) return BigFloat(prec);
    const json& v = j.at(key);
    if (v.is_string()) return BigFloat::parse(v.get<std::string>(), prec);
    if (v.is_number()) return BigFloat(v.get<double>(), prec);
    throw UserError(std::string("complex literal field '") + key + "' must be a decimal string");
  };
  return BigComplex(part("re"), part("im"));
}

}  // namespace nilsson
