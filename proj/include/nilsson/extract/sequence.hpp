#pragma once

#include <optional>
#include <vector>

#include "nilsson/exactnum/json_io.hpp"

namespace nilsson {

// a_{n_min}, a_{n_min+1}, ... as high-precision complex numbers, optionally
// with the exact rational values they were rounded from.
struct SequenceData {
  unsigned long n_min = 0;
  std::vector<BigComplex> values;
  std::optional<std::vector<Rational>> exact;

  bool is_exact() const noexcept { return exact.has_value(); }
  unsigned long n_max() const { return n_min + values.size() - 1; }
  bool contains(unsigned long n) const { return n >= n_min && n - n_min < values.size(); }
  const BigComplex& at(unsigned long n) const;
  // The window [lo, hi] must lie inside the data; throws UserError otherwise.
  void require_window(unsigned long lo, unsigned long hi, const char* what) const;
};

SequenceData sequence_from_rationals(std::vector<Rational> values, unsigned long n_min, long precision_bits);
SequenceData sequence_from_complex(std::vector<BigComplex> values, unsigned long n_min);

// {"n_min": 0, "values": ["1", "11", ...]} with exact rational strings, or
// complex literals {"re", "im", "prec"}.
SequenceData sequence_from_json(const json& j, long precision_bits);
json sequence_to_json(const SequenceData& s);

}  // namespace nilsson
