#pragma once

#include <mpfr.h>

#include <compare>
#include <string>

#include "nilsson/exactnum/rational.hpp"

namespace nilsson {

// Guard bits added on top of a requested precision; accuracy claims for
// precision-parameterized operations are 2^(-precision + kGuardBits).
inline constexpr long kGuardBits = 10;
inline constexpr long kMinPrecision = 53;

// Arbitrary-precision binary float. Every value carries its own precision;
// binary operations round to the smaller precision of their operands.
class BigFloat {
 public:
  explicit BigFloat(long precision_bits = kMinPrecision);
  BigFloat(double value, long precision_bits);
  BigFloat(const Rational& value, long precision_bits);
  BigFloat(const Integer& value, long precision_bits);
  static BigFloat parse(const std::string& decimal, long precision_bits);

  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  long precision() const noexcept { return static_cast<long>(mpfr_get_prec(v_)); }
  BigFloat with_precision(long precision_bits) const;

  mpfr_srcptr get() const noexcept { return v_; }
  mpfr_ptr get() noexcept { return v_; }

  bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const noexcept { return mpfr_number_p(v_) != 0; }
  int sign() const noexcept { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // log2 of the magnitude; -inf for zero.
  double log2_abs() const;

  // Decimal rendering with enough digits to round-trip at this precision
  // when digits == 0.
  std::string str(std::size_t digits = 0) const;

  BigFloat& operator+=(const BigFloat& o);
  BigFloat& operator-=(const BigFloat& o);
  BigFloat& operator*=(const BigFloat& o);
  BigFloat& operator/=(const BigFloat& o);

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a);

  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b);

 private:
  mpfr_t v_;
};

BigFloat abs(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat floor(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat sin(const BigFloat& x);
BigFloat cos(const BigFloat& x);
BigFloat acos(const BigFloat& x);
BigFloat atan2(const BigFloat& y, const BigFloat& x);
BigFloat pow(const BigFloat& base, const BigFloat& exponent);
BigFloat pow(const BigFloat& base, long exponent);
BigFloat ldexp(const BigFloat& x, long exponent);
BigFloat max(const BigFloat& a, const BigFloat& b);
BigFloat pi(long precision_bits);
BigFloat euler_gamma(long precision_bits);
// Natural log of a positive integer, computed without rounding the integer.
BigFloat log(const Integer& x, long precision_bits);

// Complex number with BigFloat parts; precision is the smaller of the two.
class BigComplex {
 public:
  explicit BigComplex(long precision_bits = kMinPrecision) : re_(precision_bits), im_(precision_bits) {}
  BigComplex(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) {}
  explicit BigComplex(BigFloat re) : re_(std::move(re)), im_(re_.precision()) {}
  BigComplex(const Rational& re, long precision_bits) : re_(re, precision_bits), im_(precision_bits) {}

  const BigFloat& real() const noexcept { return re_; }
  const BigFloat& imag() const noexcept { return im_; }
  long precision() const noexcept { return std::min(re_.precision(), im_.precision()); }
  BigComplex with_precision(long precision_bits) const {
    return {re_.with_precision(precision_bits), im_.with_precision(precision_bits)};
  }

  bool is_zero() const noexcept { return re_.is_zero() && im_.is_zero(); }
  BigComplex conj() const { return {re_, -im_}; }
  BigFloat norm() const;  // |z|^2
  BigFloat abs() const;
  BigFloat arg() const;

  BigComplex& operator+=(const BigComplex& o);
  BigComplex& operator-=(const BigComplex& o);
  BigComplex& operator*=(const BigComplex& o);
  BigComplex& operator/=(const BigComplex& o);

  friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
  friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
  friend BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
  friend BigComplex operator/(BigComplex a, const BigComplex& b) { return a /= b; }
  friend BigComplex operator-(const BigComplex& a) { return {-a.re_, -a.im_}; }
  friend BigComplex operator*(const BigFloat& s, const BigComplex& z) { return {s * z.re_, s * z.im_}; }
  friend bool operator==(const BigComplex& a, const BigComplex& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

 private:
  BigFloat re_;
  BigFloat im_;
};

BigComplex pow(const BigComplex& base, long exponent);
BigComplex polar(const BigFloat& modulus, const BigFloat& angle);
// Relative distance |a-b| / max(|a|,|b|); 0 when both are zero.
BigFloat relative_distance(const BigComplex& a, const BigComplex& b);

}  // namespace nilsson
