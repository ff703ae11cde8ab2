#include "nilsson/exactnum/number_field.hpp"

#include <algorithm>

#include "nilsson/error.hpp"
#include "nilsson/exactnum/roots.hpp"

namespace nilsson {

namespace {

constexpr long kFactorSearchPrecision = 256;

Integer nearest_integer(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_round(r.get(), x.get());
  Integer z;
  mpfr_get_z(z.get_mpz_t(), r.get(), MPFR_RNDN);
  return z;
}

// True when some product of one or two linear factors over C has integer
// coefficients and divides p exactly, i.e. p has a factor over Z of degree 1
// or 2. Complete for degree <= 4 (Gauss's lemma reduces factoring over Q to Z).
bool has_small_integer_factor(const Polynomial& p) {
  auto roots = poly_roots(p, kFactorSearchPrecision);
  auto divides = [&](const Polynomial& f) { return p.divmod(f).second.is_zero(); };
  for (const auto& r : roots) {
    Integer re = nearest_integer(r.real());
    if (divides(Polynomial({Rational(Integer(-re)), Rational(1)}))) return true;
  }
  if (p.degree() < 4) return false;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      BigComplex sum = roots[i] + roots[j];
      BigComplex prod = roots[i] * roots[j];
      Polynomial f({Rational(nearest_integer(prod.real())), Rational(Integer(-nearest_integer(sum.real()))), Rational(1)});
      if (divides(f)) return true;
    }
  }
  return false;
}

// Gaussian elimination over Q. Returns the determinant and, if rhs is
// non-empty, overwrites it with the solution.
Rational eliminate(std::vector<std::vector<Rational>> a, std::vector<Rational>* rhs) {
  const std::size_t n = a.size();
  Rational det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col].is_zero()) ++pivot;
    if (pivot == n) return Rational(0);
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      if (rhs) std::swap((*rhs)[pivot], (*rhs)[col]);
      det = -det;
    }
    det *= a[col][col];
    Rational inv = a[col][col].inverse();
    for (std::size_t row = col + 1; row < n; ++row) {
      if (a[row][col].is_zero()) continue;
      Rational f = a[row][col] * inv;
      for (std::size_t k = col; k < n; ++k) a[row][k] -= f * a[col][k];
      if (rhs) (*rhs)[row] -= f * (*rhs)[col];
    }
  }
  if (rhs) {
    for (std::size_t i = n; i-- > 0;) {
      Rational s = (*rhs)[i];
      for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * (*rhs)[k];
      (*rhs)[i] = s / a[i][i];
    }
  }
  return det;
}

}  // namespace

FieldPtr NumberField::create(std::vector<Integer> minpoly) {
  while (!minpoly.empty() && minpoly.back() == 0) minpoly.pop_back();
  if (minpoly.size() < 2) throw UserError("minimal polynomial must have degree >= 1");
  if (minpoly.back() != 1) throw UserError("minimal polynomial must be monic");
  bool verified = false;
  std::size_t degree = minpoly.size() - 1;
  if (degree == 1) {
    verified = true;
  } else if (degree <= 4) {
    std::vector<Rational> q(minpoly.begin(), minpoly.end());
    if (has_small_integer_factor(Polynomial(std::move(q))))
      throw UserError("minimal polynomial is reducible over Q");
    verified = true;
  }
  return FieldPtr(new NumberField(std::move(minpoly), verified));
}

const FieldPtr& NumberField::rationals() {
  static const FieldPtr q = create({Integer(0), Integer(1)});
  return q;
}

FieldPtr NumberField::quadratic(const Integer& m) { return create({Integer(-m), Integer(0), Integer(1)}); }

Polynomial NumberField::minimal_polynomial() const {
  return Polynomial(std::vector<Rational>(minpoly_.begin(), minpoly_.end()));
}

std::vector<BigComplex> NumberField::roots(long precision_bits) const {
  return poly_roots(minimal_polynomial(), precision_bits);
}

std::string NumberField::str() const { return "Q[t]/(" + minimal_polynomial().str("t") + ")"; }

NumberFieldElement::NumberFieldElement(FieldPtr field, std::vector<Rational> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
  if (!field_) throw UserError("number field element without a field");
  if (coords_.size() > field_->degree())
    throw UserError("number field element has " + std::to_string(coords_.size()) +
                    " coordinates but the field has degree " + std::to_string(field_->degree()));
  coords_.resize(field_->degree());
}

NumberFieldElement::NumberFieldElement(FieldPtr field, const Rational& value)
    : NumberFieldElement(std::move(field), std::vector<Rational>{value}) {}

NumberFieldElement NumberFieldElement::theta(FieldPtr field) {
  if (field->degree() < 2) return NumberFieldElement(field, Rational(0));
  return NumberFieldElement(field, std::vector<Rational>{Rational(0), Rational(1)});
}

bool NumberFieldElement::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return c.is_zero(); });
}

bool NumberFieldElement::is_rational() const {
  return std::all_of(coords_.begin() + 1, coords_.end(), [](const Rational& c) { return c.is_zero(); });
}

Rational NumberFieldElement::to_rational() const {
  if (!is_rational()) throw UserError("number field element " + str() + " is not rational");
  return coords_[0];
}

NumberFieldElement NumberFieldElement::lifted_to(const FieldPtr& field) const {
  if (field_ == field || *field_ == *field) return NumberFieldElement(field, coords_);
  if (field_->is_rationals()) return NumberFieldElement(field, coords_[0]);
  if (is_rational() && field->is_rationals()) return NumberFieldElement(field, coords_[0]);
  throw UserError("number field mismatch: " + field_->str() + " vs " + field->str());
}

namespace {

// Common field of a binary operation: identical fields, or Q against K.
FieldPtr common_field(const NumberFieldElement& a, const NumberFieldElement& b) {
  if (a.field() == b.field() || *a.field() == *b.field()) return a.field();
  if (a.field()->is_rationals()) return b.field();
  if (b.field()->is_rationals()) return a.field();
  throw UserError("number field mismatch: " + a.field()->str() + " vs " + b.field()->str());
}

}  // namespace

NumberFieldElement operator+(const NumberFieldElement& a, const NumberFieldElement& b) {
  FieldPtr f = common_field(a, b);
  auto x = a.lifted_to(f).coords_;
  auto y = b.lifted_to(f).coords_;
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
  return NumberFieldElement(f, std::move(x));
}

NumberFieldElement operator-(const NumberFieldElement& a, const NumberFieldElement& b) { return a + (-b); }

NumberFieldElement operator-(const NumberFieldElement& a) {
  auto x = a.coords_;
  for (auto& c : x) c = -c;
  return NumberFieldElement(a.field_, std::move(x));
}

NumberFieldElement operator*(const NumberFieldElement& a, const NumberFieldElement& b) {
  FieldPtr f = common_field(a, b);
  const std::size_t d = f->degree();
  if (d == 1) return NumberFieldElement(f, a.coords_[0] * b.coords_[0]);
  auto x = a.lifted_to(f).coords_;
  auto y = b.lifted_to(f).coords_;
  std::vector<Rational> prod(2 * d - 1);
  for (std::size_t i = 0; i < d; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < d; ++j) prod[i + j] += x[i] * y[j];
  }
  // theta^d = -sum_{j<d} m_j theta^j
  const auto& m = f->minpoly();
  for (std::size_t i = prod.size(); i-- > d;) {
    if (prod[i].is_zero()) continue;
    Rational c = prod[i];
    for (std::size_t j = 0; j < d; ++j) prod[i - d + j] -= c * Rational(m[j]);
    prod[i] = Rational(0);
  }
  prod.resize(d);
  return NumberFieldElement(f, std::move(prod));
}

NumberFieldElement operator/(const NumberFieldElement& a, const NumberFieldElement& b) {
  FieldPtr f = common_field(a, b);
  return a.lifted_to(f) * b.lifted_to(f).inverse();
}

bool operator==(const NumberFieldElement& a, const NumberFieldElement& b) {
  if (a.field_ == b.field_ || *a.field_ == *b.field_) return a.coords_ == b.coords_;
  if (a.is_rational() && b.is_rational()) return a.coords_[0] == b.coords_[0];
  return false;
}

namespace {

// Column j holds the coordinates of x * theta^j.
std::vector<std::vector<Rational>> multiplication_matrix(const NumberFieldElement& x) {
  const std::size_t d = x.field()->degree();
  std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d));
  NumberFieldElement col = x;
  NumberFieldElement t = NumberFieldElement::theta(x.field());
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < d; ++i) m[i][j] = col.coords()[i];
    if (j + 1 < d) col = col * t;
  }
  return m;
}

}  // namespace

NumberFieldElement NumberFieldElement::inverse() const {
  if (is_zero()) throw UserError("division by zero in " + field_->str());
  const std::size_t d = field_->degree();
  if (d == 1) return NumberFieldElement(field_, coords_[0].inverse());
  std::vector<Rational> rhs(d);
  rhs[0] = Rational(1);
  eliminate(multiplication_matrix(*this), &rhs);
  return NumberFieldElement(field_, std::move(rhs));
}

NumberFieldElement NumberFieldElement::pow(long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  NumberFieldElement result(field_, Rational(1));
  NumberFieldElement base = *this;
  while (exponent != 0) {
    if (exponent & 1L) result = result * base;
    exponent >>= 1;
    if (exponent != 0) base = base * base;
  }
  return result;
}

NumberFieldElement NumberFieldElement::conjugate() const {
  if (field_->degree() == 1) return *this;
  if (field_->degree() != 2) throw UserError("conjugate() is only defined for quadratic fields");
  // theta' = -m_1 - theta
  Rational m1(field_->minpoly()[1]);
  return NumberFieldElement(field_, {coords_[0] - coords_[1] * m1, -coords_[1]});
}

Rational NumberFieldElement::norm() const { return eliminate(multiplication_matrix(*this), nullptr); }

BigComplex NumberFieldElement::embed(std::size_t root_choice, long precision_bits) const {
  return Embedding(field_, root_choice, precision_bits)(*this);
}

std::string NumberFieldElement::str(const std::string& var) const {
  if (is_rational()) return coords_[0].str();
  Integer den = 1;
  for (const auto& c : coords_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.den().get_mpz_t());
  std::vector<Rational> scaled;
  for (const auto& c : coords_) scaled.push_back(c * Rational(den));
  std::string body;
  for (std::size_t i = 0; i < scaled.size(); ++i) {
    const Rational& c = scaled[i];
    if (c.is_zero()) continue;
    std::string mag = c.abs().str();
    if (body.empty()) body += c.sign() < 0 ? "-" : "";
    else body += c.sign() < 0 ? " - " : " + ";
    if (i == 0) body += mag;
    else {
      if (mag != "1") body += mag + "*";
      body += var;
      if (i > 1) body += "^" + std::to_string(i);
    }
  }
  if (den == 1) return body;
  return "(" + body + ")/" + den.get_str();
}

Embedding::Embedding(FieldPtr field, std::size_t root_choice, long precision_bits)
    : field_(std::move(field)), precision_(precision_bits), theta_(precision_bits) {
  if (precision_bits < kMinPrecision) throw UserError("embedding precision below 53 bits");
  if (root_choice >= field_->degree())
    throw UserError("root index " + std::to_string(root_choice) + " out of range for a degree-" +
                    std::to_string(field_->degree()) + " field");
  if (!field_->is_rationals()) {
    auto roots = field_->roots(precision_bits + kGuardBits);
    theta_ = roots[root_choice];
  } else {
    theta_ = BigComplex(precision_bits + kGuardBits);
  }
}

BigComplex Embedding::operator()(const NumberFieldElement& x) const {
  NumberFieldElement y = x.lifted_to(field_);
  long wp = precision_ + kGuardBits;
  BigComplex acc(wp);
  const auto& c = y.coords();
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * theta_ + BigComplex(c[i], wp);
  return acc.with_precision(precision_);
}

BigComplex nf_embed(const NumberFieldElement& x, std::size_t root_choice, long precision_bits) {
  return x.embed(root_choice, precision_bits);
}

NumberFieldElement nf_arith(const NumberFieldElement& a, const NumberFieldElement& b, FieldOp op) {
  switch (op) {
    case FieldOp::Add: return a + b;
    case FieldOp::Sub: return a - b;
    case FieldOp::Mul: return a * b;
    case FieldOp::Div: return a / b;
  }
  throw std::logic_error("unknown field operation");
}

}  // namespace nilsson
