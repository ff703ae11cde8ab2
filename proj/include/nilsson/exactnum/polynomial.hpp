#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nilsson/exactnum/bigfloat.hpp"
#include "nilsson/exactnum/rational.hpp"

namespace nilsson {

// Dense univariate polynomial over Q, coefficients by ascending degree.
// Trailing zeros are stripped, so the zero polynomial has no coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> ascending);
  Polynomial(std::initializer_list<Rational> ascending)
      : Polynomial(std::vector<Rational>(ascending)) {}

  static Polynomial monomial(const Rational& c, std::size_t degree);
  static Polynomial x() { return monomial(Rational(1), 1); }

  // -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  const std::vector<Rational>& coefficients() const noexcept { return c_; }
  // Coefficient of x^i; zero beyond the degree.
  Rational operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  const Rational& leading() const;

  Rational operator()(const Rational& x) const;
  BigComplex operator()(const BigComplex& x) const;

  Polynomial derivative() const;
  // p(x + shift)
  Polynomial shifted(const Rational& shift) const;
  Polynomial monic() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& s, const Polynomial& p);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  // Euclidean division; throws on a zero divisor.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const;

  std::string str(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

// Monic gcd; zero only if both inputs are zero.
Polynomial gcd(Polynomial a, Polynomial b);

}  // namespace nilsson
