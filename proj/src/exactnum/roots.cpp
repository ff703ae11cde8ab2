#include "nilsson/exactnum/roots.hpp"

#include <algorithm>
#include <cmath>

#include "nilsson/error.hpp"

namespace nilsson {

namespace {

constexpr long kWorkingExtra = 64;
constexpr int kMaxIterations = 4000;

struct Evaluation {
  BigComplex value;
  BigComplex derivative;
};

Evaluation horner(const std::vector<BigComplex>& coeffs, const BigComplex& z) {
  long prec = z.precision();
  BigComplex p(prec), dp(prec);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
  }
  return {p, dp};
}

BigFloat tolerance(long precision_bits, const BigComplex& z) {
  BigFloat scale = max(BigFloat(1.0, precision_bits), z.abs());
  return ldexp(scale, -(precision_bits - kGuardBits));
}

}  // namespace

bool root_order_less(const BigComplex& a, const BigComplex& b, long precision_bits) {
  BigFloat scale = max(BigFloat(1.0, precision_bits), max(a.abs(), b.abs()));
  BigFloat tol = ldexp(scale, -(precision_bits - kGuardBits));
  BigFloat dr = a.real() - b.real();
  if (abs(dr) > tol) return dr < BigFloat(0.0, precision_bits);
  return a.imag() < b.imag() && abs(a.imag() - b.imag()) > tol;
}

std::vector<BigComplex> poly_roots(const Polynomial& p, long precision_bits) {
  if (p.is_zero()) throw UserError("poly_roots: zero polynomial");
  if (p.degree() < 1) throw UserError("poly_roots: polynomial of degree < 1 has no roots");
  if (precision_bits < kMinPrecision) throw UserError("poly_roots: precision below 53 bits");
  const long wp = precision_bits + kWorkingExtra;
  const std::size_t n = static_cast<std::size_t>(p.degree());

  // Zero roots are split off exactly so the iteration only sees a nonzero
  // constant term.
  std::size_t zeros = 0;
  while (p[zeros].is_zero()) ++zeros;
  std::vector<Rational> reduced(p.coefficients().begin() + static_cast<long>(zeros), p.coefficients().end());
  Polynomial q = Polynomial(std::move(reduced)).monic();
  const std::size_t m = n - zeros;

  std::vector<BigComplex> roots;
  for (std::size_t i = 0; i < zeros; ++i) roots.emplace_back(wp);

  if (m > 0) {
    std::vector<BigComplex> coeffs;
    for (const auto& c : q.coefficients()) coeffs.emplace_back(c, wp);
    BigFloat bound(1.0, wp);  // Fujiwara-style bound: 2 max |a_i|^(1/(m-i))
    for (std::size_t i = 0; i < m; ++i) {
      double mag = std::fabs(q[i].to_double());
      if (mag == 0) continue;
      bound = max(bound, BigFloat(2.0 * std::pow(mag, 1.0 / static_cast<double>(m - i)), wp));
    }
    BigFloat radius = bound * BigFloat(0.5, wp);
    std::vector<BigComplex> z;
    BigFloat two_pi = pi(wp) * BigFloat(2.0, wp);
    for (std::size_t k = 0; k < m; ++k) {
      BigFloat angle = two_pi * BigFloat(static_cast<double>(k) / static_cast<double>(m), wp) + BigFloat(0.4, wp);
      z.push_back(polar(radius, angle));
    }

    bool converged = false;
    for (int it = 0; it < kMaxIterations && !converged; ++it) {
      converged = true;
      for (std::size_t k = 0; k < m; ++k) {
        auto [pv, dpv] = horner(coeffs, z[k]);
        if (pv.is_zero()) continue;
        BigComplex ratio = dpv.is_zero() ? BigComplex(BigFloat(1.0, wp)) : pv / dpv;
        BigComplex repulsion(wp);
        for (std::size_t j = 0; j < m; ++j) {
          if (j == k) continue;
          BigComplex diff = z[k] - z[j];
          if (!diff.is_zero()) repulsion += BigComplex(BigFloat(1.0, wp)) / diff;
        }
        BigComplex denom = BigComplex(BigFloat(1.0, wp)) - ratio * repulsion;
        BigComplex step = denom.is_zero() ? ratio : ratio / denom;
        z[k] -= step;
        if (step.abs() > ldexp(max(BigFloat(1.0, wp), z[k].abs()), -(wp - 8))) converged = false;
      }
    }

    // Newton polishing; harmless for multiple roots where it stalls.
    for (auto& root : z) {
      for (int it = 0; it < 4; ++it) {
        auto [pv, dpv] = horner(coeffs, root);
        if (dpv.is_zero() || pv.is_zero()) break;
        root -= pv / dpv;
      }
    }
    for (auto& root : z) roots.push_back(std::move(root));
  }

  std::vector<BigComplex> out;
  for (auto& r : roots) {
    BigComplex v = r.with_precision(precision_bits);
    if (abs(v.imag()) <= tolerance(precision_bits, v)) v = BigComplex(v.real(), BigFloat(precision_bits));
    if (abs(v.real()) <= ldexp(BigFloat(1.0, precision_bits), -(precision_bits - kGuardBits)) &&
        !v.imag().is_zero())
      v = BigComplex(BigFloat(precision_bits), v.imag());
    out.push_back(std::move(v));
  }
  std::stable_sort(out.begin(), out.end(), [precision_bits](const BigComplex& a, const BigComplex& b) {
    return root_order_less(a, b, precision_bits);
  });
  return out;
}

}  // namespace nilsson
