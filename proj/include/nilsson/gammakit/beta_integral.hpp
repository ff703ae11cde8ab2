#pragma once

#include <string>

#include "nilsson/exactnum/bigfloat.hpp"

namespace nilsson {

// I_{gamma,beta}(n) = int_0^oo z^(gamma-1) (log z)^beta / (1+z)^(n+1) dz.
struct BetaIntegralValue {
  Rational gamma;
  unsigned beta = 0;
  unsigned long n = 0;
  BigFloat value;
  double error_estimate = 0;  // absolute; quadrature only
  std::string method;         // "closed" or "quadrature"
};

// Gamma(gamma) Gamma(n+1-gamma) / Gamma(n+1) * p_beta(gamma, n).
BetaIntegralValue beta_integral_closed(const Rational& gamma, unsigned beta, unsigned long n, long precision_bits);

// Tanh-sinh quadrature in extended precision after splitting at z = 1 and
// mapping the tail by z -> 1/z. rel_tol must be >= 1e-12; throws
// NumericalError when the refinement budget is exhausted.
BetaIntegralValue beta_integral_quad(const Rational& gamma, unsigned beta, unsigned long n, double rel_tol = 1e-12);

}  // namespace nilsson
