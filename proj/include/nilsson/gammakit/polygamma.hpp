#pragma once

#include <array>
#include <map>
#include <string>

#include "nilsson/exactnum/bigfloat.hpp"

namespace nilsson {

// psi^(k)(x) for x > 0: upward shift to a large argument plus the
// asymptotic Bernoulli series. Accuracy 2^(-precision_bits + kGuardBits).
BigFloat polygamma(unsigned k, const Rational& x, long precision_bits);
// log Gamma(x) for x > 0.
BigFloat log_gamma(const Rational& x, long precision_bits);

inline constexpr unsigned kMaxPolygammaBeta = 8;

// Polynomial with rational coefficients in the symbols
//   u_j = psi^(j)(gamma),  v_j = psi^(j)(n+1-gamma),  j < kMaxPolygammaBeta + 1.
class PolygammaPolynomial {
 public:
  static constexpr std::size_t kSymbols = 2 * (kMaxPolygammaBeta + 1);
  // exponents[2j] is the power of u_j, exponents[2j+1] the power of v_j.
  using Monomial = std::array<unsigned, kSymbols>;

  PolygammaPolynomial() = default;
  static PolygammaPolynomial constant(const Rational& c);
  static PolygammaPolynomial symbol(bool at_gamma, unsigned order);

  const std::map<Monomial, Rational>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  // Highest polygamma order appearing, or -1 for a constant.
  int max_order() const;

  // d/dgamma, with du_j = u_{j+1} and dv_j = -v_{j+1}.
  PolygammaPolynomial derivative() const;

  BigFloat evaluate(const Rational& gamma, unsigned long n, long precision_bits) const;

  // Rendering as \psi(\gamma), \psi^{(1)}(n+1-\gamma), ...; and back.
  std::string latex() const;
  static PolygammaPolynomial parse_latex(const std::string& text);

  PolygammaPolynomial& operator+=(const PolygammaPolynomial& o);
  friend PolygammaPolynomial operator+(PolygammaPolynomial a, const PolygammaPolynomial& b) { return a += b; }
  friend PolygammaPolynomial operator-(const PolygammaPolynomial& a, const PolygammaPolynomial& b);
  friend PolygammaPolynomial operator*(const PolygammaPolynomial& a, const PolygammaPolynomial& b);
  friend bool operator==(const PolygammaPolynomial& a, const PolygammaPolynomial& b) { return a.terms_ == b.terms_; }

 private:
  void add(const Monomial& m, const Rational& c);
  std::map<Monomial, Rational> terms_;
};

// p_beta(gamma, n) = (d/dgamma)^beta B(gamma, n+1-gamma) / B(gamma, n+1-gamma).
PolygammaPolynomial p_beta_polynomial(unsigned beta);

}  // namespace nilsson
