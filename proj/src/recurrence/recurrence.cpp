#include "nilsson/recurrence/recurrence.hpp"

#include <algorithm>

#include "nilsson/error.hpp"

namespace nilsson {

long Recurrence::degree() const {
  long d = -1;
  for (const auto& p : coeffs) d = std::max(d, p.degree());
  return d;
}

void recurrence_validate(const Recurrence& rec) {
  if (rec.coeffs.size() < 2) throw UserError("a recurrence needs at least two coefficient polynomials (order >= 1)");
  if (rec.coeffs.back().is_zero()) throw UserError("leading polynomial p_L is identically zero");
  if (rec.initial && rec.initial->size() != rec.order())
    throw UserError("recurrence of order " + std::to_string(rec.order()) + " needs " + std::to_string(rec.order()) +
                    " initial values, got " + std::to_string(rec.initial->size()));
}

namespace {

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

Recurrence recurrence_from_json(const json& j) {
  try {
    if (!j.is_object()) throw UserError("recurrence document must be a JSON object");
    Recurrence rec;
    if (j.contains("minpoly")) rec.field = field_from_json(j.at("minpoly"));
    const json& coeffs = j.at("coeffs");
    if (!coeffs.is_array()) throw UserError("\"coeffs\" must be an array of coefficient arrays");
    for (const auto& p : coeffs) {
      if (!p.is_array()) throw UserError("each entry of \"coeffs\" must be an array of rationals");
      std::vector<Rational> c;
      for (const auto& v : p) c.push_back(rational_from_json(v));
      rec.coeffs.emplace_back(std::move(c));
    }
    if (j.contains("order") && j.at("order").get<std::size_t>() + 1 != rec.coeffs.size())
      throw UserError("\"order\" is " + j.at("order").dump() + " but " + std::to_string(rec.coeffs.size()) +
                      " coefficient polynomials were given");
    if (j.contains("initial")) {
      std::vector<NumberFieldElement> init;
      for (const auto& v : j.at("initial")) init.push_back(nf_from_json(v, rec.field));
      rec.initial = std::move(init);
    }
    recurrence_validate(rec);
    return rec;
  } catch (const json::exception& ex) {
    throw UserError(std::string("malformed recurrence document: ") + ex.what());
  }
}

Recurrence parse_recurrence(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& ex) {
    auto [line, column] = line_column(text, ex.byte == 0 ? 0 : ex.byte - 1);
    throw ParseError("recurrence syntax error: " + std::string(ex.what()), line, column);
  }
  return recurrence_from_json(j);
}

json recurrence_to_json(const Recurrence& rec) {
  json out;
  out["order"] = rec.order();
  json coeffs = json::array();
  for (const auto& p : rec.coeffs) {
    json c = json::array();
    for (const auto& q : p.coefficients()) c.push_back(rational_to_json(q));
    coeffs.push_back(std::move(c));
  }
  out["coeffs"] = std::move(coeffs);
  if (rec.initial) {
    json init = json::array();
    for (const auto& v : *rec.initial) {
      if (rec.field->is_rationals()) init.push_back(rational_to_json(v.to_rational()));
      else init.push_back(nf_coords_to_json(v.lifted_to(rec.field)));
    }
    out["initial"] = std::move(init);
  }
  if (!rec.field->is_rationals()) out["minpoly"] = field_to_json(*rec.field);
  return out;
}

std::string recurrence_to_text(const Recurrence& rec) { return recurrence_to_json(rec).dump(2) + "\n"; }

namespace {

template <class T>
std::vector<T> unroll_in(const Recurrence& rec, std::size_t N, std::vector<T> values) {
  const std::size_t L = rec.order();
  values.reserve(N + 1);
  for (std::size_t n = 0; values.size() <= N; ++n) {
    Rational lead = rec.coeffs[L](Rational(static_cast<long>(n)));
    if (lead.is_zero())
      throw UserError("leading coefficient p_L(n) vanishes at n = " + std::to_string(n) + "; cannot compute a_" +
                      std::to_string(n + L));
    T acc = values[n] * rec.coeffs[0](Rational(static_cast<long>(n)));
    for (std::size_t i = 1; i < L; ++i) acc += values[n + i] * rec.coeffs[i](Rational(static_cast<long>(n)));
    values.push_back(acc * (-lead.inverse()));
  }
  return values;
}

}  // namespace

std::vector<NumberFieldElement> unroll(const Recurrence& rec, std::size_t N) {
  recurrence_validate(rec);
  if (!rec.initial) throw UserError("unrolling needs initial values");
  const auto& init = *rec.initial;
  std::vector<NumberFieldElement> out;
  if (N + 1 <= init.size()) return {init.begin(), init.begin() + static_cast<std::ptrdiff_t>(N) + 1};
  bool rational = std::all_of(init.begin(), init.end(), [](const auto& v) { return v.is_rational(); });
  if (rational) {
    std::vector<Rational> start;
    for (const auto& v : init) start.push_back(v.to_rational());
    for (auto& v : unroll_in(rec, N, std::move(start))) out.emplace_back(v);
  } else {
    std::vector<NumberFieldElement> start;
    for (const auto& v : init) start.push_back(v.lifted_to(rec.field));
    out = unroll_in(rec, N, std::move(start));
  }
  return out;
}

Polynomial characteristic_polynomial(const Recurrence& rec) {
  long D = rec.degree();
  std::vector<Rational> c;
  for (const auto& p : rec.coeffs) c.push_back(D < 0 ? Rational(0) : p[static_cast<std::size_t>(D)]);
  return Polynomial(std::move(c));
}

}  // namespace nilsson
