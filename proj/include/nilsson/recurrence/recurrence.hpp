#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nilsson/exactnum/json_io.hpp"
#include "nilsson/exactnum/number_field.hpp"
#include "nilsson/exactnum/polynomial.hpp"

namespace nilsson {

// sum_{i=0}^{L} p_i(n) a_{n+i} = 0 with p_i in Q[n].
struct Recurrence {
  std::vector<Polynomial> coeffs;                         // p_0 .. p_L
  std::optional<std::vector<NumberFieldElement>> initial;  // a_0 .. a_{L-1}
  FieldPtr field = NumberField::rationals();               // field of the initial values

  std::size_t order() const noexcept { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  // Max degree D of the p_i.
  long degree() const;
};

// Validates order >= 1, p_L != 0, initial-value count.
void recurrence_validate(const Recurrence& rec);

// Recurrence file: {"order": L, "coeffs": [[c00, c01, ...], ...],
// "initial": ["2", "5"], "minpoly": [...]} with coeffs[i][j] the n^j
// coefficient of p_i. Syntax errors carry line and column.
Recurrence parse_recurrence(const std::string& text);
Recurrence recurrence_from_json(const json& j);
json recurrence_to_json(const Recurrence& rec);
// Canonical serialization (stable key order, trailing newline).
std::string recurrence_to_text(const Recurrence& rec);

// Exact a_0 .. a_N by a_{n+L} = -(sum_{i<L} p_i(n) a_{n+i}) / p_L(n).
std::vector<NumberFieldElement> unroll(const Recurrence& rec, std::size_t N);

// chi(x) = sum_i [n^D] p_i * x^i.
Polynomial characteristic_polynomial(const Recurrence& rec);

}  // namespace nilsson
