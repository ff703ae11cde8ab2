#include "nilsson/exactnum/bigfloat.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "nilsson/error.hpp"

namespace nilsson {

namespace {

long checked_precision(long bits) {
  if (bits < MPFR_PREC_MIN || bits > 1L << 24)
    throw UserError("precision " + std::to_string(bits) + " bits is out of range");
  return bits;
}

long min_prec(const BigFloat& a, const BigFloat& b) { return std::min(a.precision(), b.precision()); }

template <class F>
BigFloat unary(const BigFloat& x, F f) {
  BigFloat r(x.precision());
  f(r.get(), x.get(), MPFR_RNDN);
  return r;
}

}  // namespace

BigFloat::BigFloat(long precision_bits) {
  mpfr_init2(v_, checked_precision(precision_bits));
  mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(double value, long precision_bits) : BigFloat(precision_bits) {
  mpfr_set_d(v_, value, MPFR_RNDN);
}

BigFloat::BigFloat(const Rational& value, long precision_bits) : BigFloat(precision_bits) {
  mpfr_set_q(v_, value.mpq().get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const Integer& value, long precision_bits) : BigFloat(precision_bits) {
  mpfr_set_z(v_, value.get_mpz_t(), MPFR_RNDN);
}

BigFloat BigFloat::parse(const std::string& decimal, long precision_bits) {
  BigFloat r(precision_bits);
  char* end = nullptr;
  mpfr_strtofr(r.v_, decimal.c_str(), &end, 10, MPFR_RNDN);
  if (end == decimal.c_str() || *end != '\0') throw UserError("malformed decimal '" + decimal + "'");
  return r;
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_swap(v_, other.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::with_precision(long precision_bits) const {
  BigFloat r(precision_bits);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

double BigFloat::log2_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  long e = 0;
  double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
  return std::log2(std::fabs(m)) + static_cast<double>(e);
}

std::string BigFloat::str(std::size_t digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return sign() > 0 ? "inf" : "-inf";
  if (is_zero()) return "0";
  if (digits == 0) digits = static_cast<std::size_t>(std::ceil(static_cast<double>(precision()) * 0.30103)) + 1;
  mpfr_exp_t exponent = 0;
  char* raw = mpfr_get_str(nullptr, &exponent, 10, digits, v_, MPFR_RNDN);
  std::string mantissa(raw);
  mpfr_free_str(raw);
  bool negative = mantissa.front() == '-';
  if (negative) mantissa.erase(0, 1);
  while (mantissa.size() > 1 && mantissa.back() == '0') mantissa.pop_back();
  std::string out = negative ? "-" : "";
  out += mantissa.substr(0, 1);
  if (mantissa.size() > 1) out += "." + mantissa.substr(1);
  long e10 = static_cast<long>(exponent) - 1;
  if (e10 != 0) out += "e" + std::to_string(e10);
  return out;
}

BigFloat& BigFloat::operator+=(const BigFloat& o) { return *this = *this + o; }
BigFloat& BigFloat::operator-=(const BigFloat& o) { return *this = *this - o; }
BigFloat& BigFloat::operator*=(const BigFloat& o) { return *this = *this * o; }
BigFloat& BigFloat::operator/=(const BigFloat& o) { return *this = *this / o; }

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
  BigFloat r(min_prec(a, b));
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigFloat operator-(const BigFloat& a, const BigFloat& b) {
  BigFloat r(min_prec(a, b));
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigFloat operator*(const BigFloat& a, const BigFloat& b) {
  BigFloat r(min_prec(a, b));
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
  if (b.is_zero()) throw NumericalError("floating-point division by zero");
  BigFloat r(min_prec(a, b));
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigFloat operator-(const BigFloat& a) { return unary(a, mpfr_neg); }

std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.v_, b.v_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

BigFloat abs(const BigFloat& x) { return unary(x, mpfr_abs); }
BigFloat sqrt(const BigFloat& x) { return unary(x, mpfr_sqrt); }
BigFloat floor(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_floor(r.get(), x.get());
  return r;
}
BigFloat exp(const BigFloat& x) { return unary(x, mpfr_exp); }
BigFloat log(const BigFloat& x) { return unary(x, mpfr_log); }
BigFloat sin(const BigFloat& x) { return unary(x, mpfr_sin); }
BigFloat cos(const BigFloat& x) { return unary(x, mpfr_cos); }
BigFloat acos(const BigFloat& x) { return unary(x, mpfr_acos); }

BigFloat atan2(const BigFloat& y, const BigFloat& x) {
  BigFloat r(min_prec(y, x));
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}

BigFloat pow(const BigFloat& base, const BigFloat& exponent) {
  BigFloat r(min_prec(base, exponent));
  mpfr_pow(r.get(), base.get(), exponent.get(), MPFR_RNDN);
  return r;
}

BigFloat pow(const BigFloat& base, long exponent) {
  BigFloat r(base.precision());
  mpfr_pow_si(r.get(), base.get(), exponent, MPFR_RNDN);
  return r;
}

BigFloat ldexp(const BigFloat& x, long exponent) {
  BigFloat r(x.precision());
  mpfr_mul_2si(r.get(), x.get(), exponent, MPFR_RNDN);
  return r;
}

BigFloat max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }

BigFloat pi(long precision_bits) {
  BigFloat r(precision_bits);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

BigFloat euler_gamma(long precision_bits) {
  BigFloat r(precision_bits);
  mpfr_const_euler(r.get(), MPFR_RNDN);
  return r;
}

BigFloat log(const Integer& x, long precision_bits) {
  if (x <= 0) throw UserError("log of a non-positive integer");
  // log(m * 2^e) = log(m) + e log 2 with m in [1/2, 1), so huge integers keep
  // full relative accuracy.
  long bits = static_cast<long>(mpz_sizeinbase(x.get_mpz_t(), 2));
  BigFloat m(x, std::max<long>(precision_bits + 2 * kGuardBits, bits));
  m = ldexp(m, -bits).with_precision(precision_bits + kGuardBits);
  BigFloat ln2(precision_bits + kGuardBits);
  mpfr_const_log2(ln2.get(), MPFR_RNDN);
  return (log(m) + BigFloat(Integer(bits), precision_bits + kGuardBits) * ln2).with_precision(precision_bits);
}

BigFloat BigComplex::norm() const { return re_ * re_ + im_ * im_; }

BigFloat BigComplex::abs() const {
  BigFloat r(precision());
  mpfr_hypot(r.get(), re_.get(), im_.get(), MPFR_RNDN);
  return r;
}

BigFloat BigComplex::arg() const { return atan2(im_, re_); }

BigComplex& BigComplex::operator+=(const BigComplex& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

BigComplex& BigComplex::operator-=(const BigComplex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

BigComplex& BigComplex::operator*=(const BigComplex& o) {
  BigFloat re = re_ * o.re_ - im_ * o.im_;
  BigFloat im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

BigComplex& BigComplex::operator/=(const BigComplex& o) {
  BigFloat d = o.norm();
  if (d.is_zero()) throw NumericalError("complex division by zero");
  BigFloat re = (re_ * o.re_ + im_ * o.im_) / d;
  BigFloat im = (im_ * o.re_ - re_ * o.im_) / d;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

BigComplex pow(const BigComplex& base, long exponent) {
  if (exponent < 0) {
    BigComplex one(BigFloat(1.0, base.precision()));
    return one / pow(base, -exponent);
  }
  BigComplex result(BigFloat(1.0, base.precision()));
  BigComplex b = base;
  unsigned long e = static_cast<unsigned long>(exponent);
  while (e != 0) {
    if (e & 1UL) result *= b;
    e >>= 1;
    if (e != 0) b *= b;
  }
  return result;
}

BigComplex polar(const BigFloat& modulus, const BigFloat& angle) {
  return {modulus * cos(angle), modulus * sin(angle)};
}

BigFloat relative_distance(const BigComplex& a, const BigComplex& b) {
  BigFloat scale = max(a.abs(), b.abs());
  if (scale.is_zero()) return BigFloat(a.precision());
  return (a - b).abs() / scale;
}

}  // namespace nilsson
