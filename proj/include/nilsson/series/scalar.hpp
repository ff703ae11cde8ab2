#pragma once

#include <functional>

#include "nilsson/exactnum/bigfloat.hpp"
#include "nilsson/exactnum/number_field.hpp"

namespace nilsson {

// Coefficient domains of an expansion: exact elements of one number field
// (rationals are the degree-1 case) or high-precision complex values.
template <class T>
struct ScalarTraits;

// Field of all exact data plus the complex embedding used for numerics.
struct ExactContext {
  FieldPtr field = NumberField::rationals();
  std::size_t root = 0;
};

struct NumericContext {};

template <>
struct ScalarTraits<NumberFieldElement> {
  using Context = ExactContext;
  static constexpr bool exact = true;

  static NumberFieldElement zero(const Context& ctx, const NumberFieldElement&) {
    return NumberFieldElement(ctx.field, Rational(0));
  }
  static NumberFieldElement one(const Context& ctx, const NumberFieldElement&) {
    return NumberFieldElement(ctx.field, Rational(1));
  }
  static bool is_zero(const NumberFieldElement& x) { return x.is_zero(); }
  static bool is_one(const NumberFieldElement& x) { return x == NumberFieldElement(Rational(1)); }
  static bool equal(const NumberFieldElement& a, const NumberFieldElement& b, double) { return a == b; }
  static std::function<BigComplex(const NumberFieldElement&)> embedder(const Context& ctx, long precision_bits) {
    Embedding e(ctx.field, ctx.root, precision_bits);
    return [e](const NumberFieldElement& x) { return e(x); };
  }
};

template <>
struct ScalarTraits<BigComplex> {
  using Context = NumericContext;
  static constexpr bool exact = false;

  static BigComplex zero(const Context&, const BigComplex& like) { return BigComplex(like.precision()); }
  static BigComplex one(const Context&, const BigComplex& like) {
    return BigComplex(BigFloat(1.0, like.precision()));
  }
  static bool is_zero(const BigComplex& x) { return x.is_zero(); }
  static bool is_one(const BigComplex& x) { return x.imag().is_zero() && x.real() == BigFloat(1.0, x.precision()); }
  // Relative comparison; tol is a relative tolerance.
  static bool equal(const BigComplex& a, const BigComplex& b, double tol) {
    return relative_distance(a, b) <= BigFloat(tol, std::min(a.precision(), b.precision()));
  }
  static std::function<BigComplex(const BigComplex&)> embedder(const Context&, long precision_bits) {
    return [precision_bits](const BigComplex& x) { return x.with_precision(precision_bits); };
  }
};

}  // namespace nilsson
