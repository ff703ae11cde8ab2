#pragma once

#include <optional>
#include <vector>

#include "nilsson/recurrence/recurrence.hpp"
#include "nilsson/series/expansion_io.hpp"

namespace nilsson {

// Exact data of a formal solution: everything lies in one number field,
// embedded into C at context.root.
struct ExactFormalData {
  ExactContext context;
  NumberFieldElement lambda;
  NumberFieldElement alpha;
  TruncatedSeries<NumberFieldElement> g;
};

// a_n ~ lambda^n * n^alpha * (1 + c_1/n + ... + c_K/n^K). Note the sign
// convention: alpha here is the exponent of n, so the Omega index of the
// leading monomial is (-alpha, 0).
struct FormalSolution {
  std::optional<ExactFormalData> exact;  // present when the root is rational or quadratic
  BigComplex lambda;
  BigComplex alpha;
  TruncatedSeries<BigComplex> g;
  unsigned log_degree = 0;
  std::optional<Rational> alpha_rational;  // set iff alpha is rational
};

// One solution per characteristic root, ordered like poly_roots. Supported
// regime: simple nonzero roots, deg chi = L (unramified). Other regimes
// raise UnsupportedError with a diagnostic.
std::vector<FormalSolution> formal_solutions(const Recurrence& rec, std::size_t K, long precision_bits);

// |sum_i p_i(n) a^(n+i)| / |lambda^n n^(alpha + D)| for each n of the grid,
// where a^ is the truncated formal solution. Scales as n^(-K-2).
std::vector<BigFloat> residual_check(const Recurrence& rec, const FormalSolution& sol,
                                     const std::vector<unsigned long>& n_grid, long precision_bits);

// Expansion built from the solutions of maximal |lambda| (the dominant
// Nilsson part), each with a unit placeholder Stokes constant. Exact when all
// of them are exact in a common field; requires rational alpha.
AnyExpansion solutions_to_expansion(const std::vector<FormalSolution>& sols, long precision_bits);

}  // namespace nilsson
