#include "nilsson/extract/sequence.hpp"

#include "nilsson/error.hpp"

namespace nilsson {

const BigComplex& SequenceData::at(unsigned long n) const {
  if (!contains(n)) throw UserError("sequence has no value at n = " + std::to_string(n));
  return values[n - n_min];
}

void SequenceData::require_window(unsigned long lo, unsigned long hi, const char* what) const {
  if (lo > hi) throw UserError(std::string(what) + ": empty window " + std::to_string(lo) + ":" + std::to_string(hi));
  if (values.empty() || !contains(lo) || !contains(hi))
    throw UserError(std::string(what) + ": window " + std::to_string(lo) + ":" + std::to_string(hi) +
                    " is outside the data range " + std::to_string(n_min) + ".." +
                    (values.empty() ? std::string("(empty)") : std::to_string(n_max())));
}

SequenceData sequence_from_rationals(std::vector<Rational> values, unsigned long n_min, long precision_bits) {
  SequenceData s;
  s.n_min = n_min;
  s.values.reserve(values.size());
  for (const auto& q : values) s.values.emplace_back(q, precision_bits);
  s.exact = std::move(values);
  return s;
}

SequenceData sequence_from_complex(std::vector<BigComplex> values, unsigned long n_min) {
  SequenceData s;
  s.n_min = n_min;
  s.values = std::move(values);
  return s;
}

SequenceData sequence_from_json(const json& j, long precision_bits) {
  try {
    if (!j.is_object()) throw UserError("values document must be a JSON object");
    unsigned long n_min = j.value("n_min", 0ul);
    const json& v = j.at("values");
    if (!v.is_array() || v.size() < 2) throw UserError("values document needs at least two values");
    bool exact = true;
    for (const auto& x : v) exact = exact && !is_complex_literal(x);
    if (exact) {
      std::vector<Rational> q;
      for (const auto& x : v) q.push_back(rational_from_json(x));
      return sequence_from_rationals(std::move(q), n_min, precision_bits);
    }
    std::vector<BigComplex> c;
    for (const auto& x : v) {
      if (is_complex_literal(x)) c.push_back(complex_from_json(x, precision_bits));
      else c.emplace_back(rational_from_json(x), precision_bits);
    }
    return sequence_from_complex(std::move(c), n_min);
  } catch (const json::exception& ex) {
    throw UserError(std::string("malformed values document: ") + ex.what());
  }
}

json sequence_to_json(const SequenceData& s) {
  json values = json::array();
  if (s.exact) {
    for (const auto& q : *s.exact) values.push_back(rational_to_json(q));
  } else {
    for (const auto& z : s.values) values.push_back(complex_to_json(z));
  }
  return json{{"n_min", s.n_min}, {"values", std::move(values)}};
}

}  // namespace nilsson
