#pragma once

#include <string>
#include <vector>

#include "nilsson/exactnum/rational.hpp"

namespace nilsson {

struct GFunctionReport {
  double size_C = 0;                        // max over window of |a_n|^(1/n)
  double denom_C = 0;                       // max over window of lcm-den(a_0..a_n)^(1/n)
  double size_C_first = 0, size_C_second = 0;    // same over the window halves
  double denom_C_first = 0, denom_C_second = 0;
  bool compatible = false;                  // finite and stable across halves (20%)
  std::string note;
};

// Values are a_0, a_1, ...; window [lo, hi] with 1 <= lo < hi < values.size().
GFunctionReport gfunction_diagnostic(const std::vector<Rational>& values, std::size_t lo, std::size_t hi);

}  // namespace nilsson
