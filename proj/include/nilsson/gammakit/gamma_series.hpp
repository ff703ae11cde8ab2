#pragma once

#include <cstddef>
#include <vector>

#include "nilsson/exactnum/polynomial.hpp"
#include "nilsson/exactnum/rational.hpp"

namespace nilsson {

// Gamma(n+1-gamma)/Gamma(n+1) ~ n^(-gamma) sum_{k<=K} c_k n^(-k), c_0 = 1.
struct GammaRatioSeries {
  Rational gamma;
  std::size_t order = 0;
  std::vector<Rational> coefficients;
};

// Bernoulli numbers B_0 .. B_m (B_1 = -1/2), cached across calls.
std::vector<Rational> bernoulli_numbers(std::size_t m);
// B_m(x) as a polynomial.
Polynomial bernoulli_polynomial(std::size_t m);

GammaRatioSeries gamma_ratio_series(const Rational& gamma, std::size_t K);
// The same coefficients as exact polynomials in gamma: c_k(gamma), k <= K.
std::vector<Polynomial> gamma_ratio_series_symbolic(std::size_t K);

}  // namespace nilsson
