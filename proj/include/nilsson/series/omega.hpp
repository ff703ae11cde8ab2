#pragma once

#include <compare>
#include <string>
#include <vector>

#include "nilsson/exactnum/bigfloat.hpp"
#include "nilsson/exactnum/rational.hpp"

namespace nilsson {

// Index (alpha, beta) of the Nilsson monomial (log n)^beta / n^alpha.
//
// Ordering is by asymptotic dominance: (a, b) < (a', b') iff a < a', or
// a == a' and b > b'. Smaller means larger as n -> infinity, so
// (1, 1) < (1, 0) because log n / n dominates 1 / n.
struct OmegaIndex {
  Rational alpha;
  unsigned beta = 0;

  static OmegaIndex parse(const std::string& text);  // "3/2,0"
  std::string str() const;

  friend bool operator==(const OmegaIndex&, const OmegaIndex&) = default;
  friend std::strong_ordering operator<=>(const OmegaIndex& a, const OmegaIndex& b);
};

std::strong_ordering omega_cmp(const OmegaIndex& a, const OmegaIndex& b);

// Membership in Omega = (S + N) x {0..d}.
bool in_omega(const OmegaIndex& w, const std::vector<Rational>& base, unsigned max_log_power);

// (log n)^beta * n^(-alpha) with the natural log; requires n >= 2.
BigFloat monomial_eval(const OmegaIndex& w, unsigned long n, long precision_bits);

// ';'-separated list of "alpha,beta" cuts.
std::vector<OmegaIndex> parse_omega_list(const std::string& text);

}  // namespace nilsson
