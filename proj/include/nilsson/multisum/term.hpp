#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nilsson/exactnum/json_io.hpp"
#include "nilsson/exactnum/number_field.hpp"

namespace nilsson {

// coeff_n * n + sum_i coeff_k[i] * k_i + constant. The constant offset
// extends the integral forms of the definition (needed e.g. for (3n+1)!).
struct LinearForm {
  long coeff_n = 0;
  std::vector<long> coeff_k;
  long constant = 0;

  long eval(long n, const std::vector<long>& k) const;
  bool is_zero() const;
  bool linear_part_zero() const;  // ignoring the constant
  std::string str() const;
  friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

struct FactorialFactor {
  LinearForm form;
  int eps = 1;  // +1: form! in the numerator, -1: in the denominator
};

struct Prefactor {
  LinearForm form;
  long exponent = 1;  // form(n, k)^exponent, exponent may be negative
};

// t_{n,k} = C0^n prod C_i^{k_i} (-1)^{sign_form} prod prefactors
//           prod A_j(n,k)!^{eps_j}
struct BalancedTerm {
  std::size_t r = 0;
  NumberFieldElement C0{Rational(1)};
  std::vector<NumberFieldElement> C;
  std::vector<FactorialFactor> factors;
  std::optional<LinearForm> sign_form;
  std::vector<Prefactor> prefactors;
  FieldPtr field = NumberField::rationals();
};

struct BalanceReport {
  bool balanced = false;              // sum eps_j A_j is the zero form
  bool linear_part_balanced = false;  // ... up to its constant term
  LinearForm defect;                  // sum eps_j A_j
  std::string str() const;
};

struct SupportSet {
  long n = 0;
  std::vector<std::vector<long>> points;
};

// Validates shapes (lengths equal r, eps = +-1).
void term_validate(const BalancedTerm& t);

BalanceReport check_balanced(const BalancedTerm& t);

// All k in Z^r with A_j(n, k) >= 0 for every factorial form, in
// lexicographic order. Bounds per variable come from exact Fourier-Motzkin
// elimination; throws on an unbounded projection or when more than
// `point_cap` points are produced.
SupportSet enumerate_support(const BalancedTerm& t, long n, std::size_t point_cap = 10'000'000);

// Exact a_n = sum over the support of t_{n,k}.
NumberFieldElement eval_multisum(const BalancedTerm& t, long n);
// a_{n0} .. a_{n1} sharing one factorial table.
std::vector<NumberFieldElement> eval_multisum_range(const BalancedTerm& t, long n0, long n1);

// Term files: {"r", "C0", "C", "factors": [{"form": {"n", "k", "const"},
// "eps"}], "sign_form", "prefactors": [{"form", "exp"}], "minpoly"}.
BalancedTerm term_from_json(const json& j);
json term_to_json(const BalancedTerm& t);

// Built-ins: "apery-like" (double sum with binomial(n,k+l)^2
// binomial(n+k,k)^3 binomial(n+l,l)), "tet6j" (tetrahedron sum with offset-free
// factorial forms and explicit (k+1), (3n+1)^-2 prefactors; exactly
// balanced) and "tet6j-literal" (the same sum with (k+1)! and (3n+1)!;
// balanced up to a constant).
BalancedTerm builtin_term(const std::string& name);
std::vector<std::string> builtin_term_names();

}  // namespace nilsson
