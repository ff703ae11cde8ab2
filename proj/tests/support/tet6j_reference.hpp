#pragma once

// Reference data of the tetrahedron (6j) sequence: growth rates
// (329 -+ 460 i sqrt2)/729 and the first six coefficients of the normalized
// g-series, written in Q(theta) with theta = i sqrt2, i.e. theta^2 = -2 and
// theta embedded at the root with positive imaginary part. The "+" branch
// (lambda = (329 - 460 theta)/729) is stored; the other one is its conjugate.

#include <string>
#include <vector>

#include "nilsson/exactnum/number_field.hpp"

namespace nilsson::testing {

inline FieldPtr tet6j_field() { return NumberField::create({Integer(2), Integer(0), Integer(1)}); }

inline std::size_t tet6j_root() { return 1; }

inline NumberFieldElement q_theta(const FieldPtr& k, const char* a, const char* b, const char* den) {
  Rational d = Rational::parse(den);
  return NumberFieldElement(k, {Rational::parse(a) / d, Rational::parse(b) / d});
}

inline NumberFieldElement tet6j_lambda_plus(const FieldPtr& k) { return q_theta(k, "329", "-460", "729"); }

// c_0 = 1, c_1..c_6 for the "+" branch.
inline std::vector<NumberFieldElement> tet6j_g_plus(const FieldPtr& k) {
  return {
      NumberFieldElement(k, Rational(1)),
      q_theta(k, "-432", "31", "576"),
      q_theta(k, "109847", "-22320", "331776"),
      q_theta(k, "-18649008", "4914305", "573308928"),
      q_theta(k, "14721750481", "45578388960", "660451885056"),
      q_theta(k, "-83614134803760", "7532932167923", "380420285792256"),
      q_theta(k, "-31784729861796581", "-212040612888146640", "657366253849018368"),
  };
}

}  // namespace nilsson::testing
