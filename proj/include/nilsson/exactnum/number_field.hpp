#pragma once

#include <memory>
#include <string>
#include <vector>

#include "nilsson/exactnum/bigfloat.hpp"
#include "nilsson/exactnum/polynomial.hpp"
#include "nilsson/exactnum/rational.hpp"

namespace nilsson {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

// Q(theta) for a monic irreducible integer polynomial. Irreducibility is
// verified for degree <= 4; higher degrees are accepted and flagged.
class NumberField {
 public:
  // Ascending integer coefficients; the leading one must be 1.
  static FieldPtr create(std::vector<Integer> minpoly_ascending);
  // Q itself, presented as Q(theta) with theta = 0 (minimal polynomial x).
  static const FieldPtr& rationals();
  // Q(sqrt(m)) with minimal polynomial x^2 - m; m must not be a square.
  static FieldPtr quadratic(const Integer& m);

  std::size_t degree() const noexcept { return minpoly_.size() - 1; }
  bool is_rationals() const noexcept { return degree() == 1 && minpoly_[0] == 0; }
  const std::vector<Integer>& minpoly() const noexcept { return minpoly_; }
  Polynomial minimal_polynomial() const;
  bool irreducibility_verified() const noexcept { return verified_; }
  // Index of the embedding used when none is requested: the last root in
  // (real, imag) order, i.e. +sqrt(m) or +i sqrt(|m|) for quadratic fields.
  std::size_t default_root() const noexcept { return degree() - 1; }
  // Complex roots of the minimal polynomial in (real, imag) order.
  std::vector<BigComplex> roots(long precision_bits) const;

  std::string str() const;

  friend bool operator==(const NumberField& a, const NumberField& b) { return a.minpoly_ == b.minpoly_; }

 private:
  NumberField(std::vector<Integer> minpoly, bool verified) : minpoly_(std::move(minpoly)), verified_(verified) {}
  std::vector<Integer> minpoly_;
  bool verified_;
};

// Exact element sum_i coords[i] theta^i of a number field.
class NumberFieldElement {
 public:
  NumberFieldElement() : NumberFieldElement(NumberField::rationals(), Rational(0)) {}
  NumberFieldElement(FieldPtr field, std::vector<Rational> coords);
  NumberFieldElement(FieldPtr field, const Rational& value);
  NumberFieldElement(const Rational& value)  // NOLINT: rationals embed in Q
      : NumberFieldElement(NumberField::rationals(), value) {}

  static NumberFieldElement theta(FieldPtr field);

  const FieldPtr& field() const noexcept { return field_; }
  const std::vector<Rational>& coords() const noexcept { return coords_; }

  bool is_zero() const;
  bool is_rational() const;
  // Throws UserError unless is_rational().
  Rational to_rational() const;
  // The same value in another field; only Q lifts into other fields.
  NumberFieldElement lifted_to(const FieldPtr& field) const;

  NumberFieldElement inverse() const;
  NumberFieldElement pow(long exponent) const;
  // Image under theta -> other root of the minimal polynomial; quadratic
  // fields only (the nontrivial Galois automorphism).
  NumberFieldElement conjugate() const;
  // Field norm (determinant of the multiplication map).
  Rational norm() const;

  BigComplex embed(std::size_t root_choice, long precision_bits) const;

  // e.g. "(329 - 460*t)/729" style with theta printed as `var`.
  std::string str(const std::string& var = "t") const;

  friend NumberFieldElement operator+(const NumberFieldElement& a, const NumberFieldElement& b);
  friend NumberFieldElement operator-(const NumberFieldElement& a, const NumberFieldElement& b);
  friend NumberFieldElement operator*(const NumberFieldElement& a, const NumberFieldElement& b);
  friend NumberFieldElement operator/(const NumberFieldElement& a, const NumberFieldElement& b);
  friend NumberFieldElement operator-(const NumberFieldElement& a);
  NumberFieldElement& operator+=(const NumberFieldElement& o) { return *this = *this + o; }
  NumberFieldElement& operator-=(const NumberFieldElement& o) { return *this = *this - o; }
  NumberFieldElement& operator*=(const NumberFieldElement& o) { return *this = *this * o; }
  NumberFieldElement& operator/=(const NumberFieldElement& o) { return *this = *this / o; }
  friend bool operator==(const NumberFieldElement& a, const NumberFieldElement& b);

 private:
  FieldPtr field_;
  std::vector<Rational> coords_;
};

// Evaluates field elements at one fixed complex root; caches the root.
class Embedding {
 public:
  Embedding(FieldPtr field, std::size_t root_choice, long precision_bits);
  BigComplex operator()(const NumberFieldElement& x) const;
  const BigComplex& theta() const noexcept { return theta_; }
  long precision() const noexcept { return precision_; }

 private:
  FieldPtr field_;
  long precision_;
  BigComplex theta_;
};

// Free-function forms of the module operations.
BigComplex nf_embed(const NumberFieldElement& x, std::size_t root_choice, long precision_bits);

enum class FieldOp { Add, Sub, Mul, Div };
NumberFieldElement nf_arith(const NumberFieldElement& a, const NumberFieldElement& b, FieldOp op);

}  // namespace nilsson
