#include "nilsson/series/expansion.hpp"

#include <bit>

namespace nilsson {

BigComplex expansion_partial_sum_scaled(const NumericExpansion& e, const OmegaIndex& cut, unsigned long n,
                                        long precision_bits) {
  auto [S, d] = e.S.empty() ? implied_omega(e) : std::make_pair(e.S, e.d);
  if (!in_omega(cut, S, d)) throw UserError("cut " + cut.str() + " is not an element of the expansion's Omega");
  if (n < 2) throw UserError("partial sums are evaluated at n >= 2, got n = " + std::to_string(n));
  // Raising to the n-th power costs about log2(n) bits.
  const long wp = precision_bits + kGuardBits + static_cast<long>(std::bit_width(n));
  BigFloat inv_r = BigFloat(1.0, wp) / expansion_radius(e, wp);
  std::vector<BigComplex> phase;
  for (const auto& l : e.lambdas) phase.push_back(pow(inv_r * l.with_precision(wp), static_cast<long>(n)));
  BigComplex total(wp);
  for (const auto& t : e.terms) {
    for (std::size_t k = 0; k <= t.g.order(); ++k) {
      OmegaIndex w = t.omega(k);
      if (cut < w) break;
      if (t.g[k].is_zero()) continue;
      total += monomial_eval(w, n, wp) * (t.stokes.with_precision(wp) * t.g[k] * phase[t.lambda_index]);
    }
  }
  return total.with_precision(precision_bits);
}

}  // namespace nilsson
