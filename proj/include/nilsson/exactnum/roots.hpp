#pragma once

#include <vector>

#include "nilsson/exactnum/bigfloat.hpp"
#include "nilsson/exactnum/polynomial.hpp"

namespace nilsson {

// All complex roots of p, with multiplicity, sorted lexicographically by
// (real, imag). Real parts that agree to the working tolerance are treated as
// equal for ordering, so conjugate pairs come out as (-i, +i). Imaginary parts
// below the tolerance are snapped to zero. Simple roots are accurate to
// 2^(-precision_bits + kGuardBits) relative to max(1, |root|).
//
// Aberth-Ehrlich simultaneous iteration at precision_bits + 64 bits, then
// Newton polishing.
std::vector<BigComplex> poly_roots(const Polynomial& p, long precision_bits);

// Lexicographic (real, imag) comparison with a relative tie tolerance on the
// real parts.
bool root_order_less(const BigComplex& a, const BigComplex& b, long precision_bits);

}  // namespace nilsson
