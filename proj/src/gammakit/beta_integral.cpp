#include "nilsson/gammakit/beta_integral.hpp"

#include <cmath>
#include <numbers>

#include "nilsson/error.hpp"
#include "nilsson/gammakit/polygamma.hpp"

namespace nilsson {

namespace {

void check_range(const Rational& gamma, unsigned long n) {
  if (gamma <= Rational(0) || gamma >= Rational(static_cast<long>(n) + 1))
    throw UserError("the Beta integral needs 0 < gamma < n+1 (gamma = " + gamma.str() + ", n = " +
                    std::to_string(n) + ")");
}

using real = long double;

// J(s) = int_0^1 w^(s-1) (log w)^beta / (1+w)^(n+1) dw by the tanh-sinh
// substitution w = 1/(1+exp(-u)), u = pi sinh t. Everything is evaluated in
// log form so that w^(s-1) near w = 0 neither overflows nor underflows early.
class TanhSinh {
 public:
  TanhSinh(real s, unsigned beta, unsigned long n) : s_(s), beta_(beta), n1_(static_cast<real>(n) + 1) {
    // Truncate where w^s < e^-60 at the left end (the right end decays
    // doubly exponentially regardless).
    half_width_ = std::asinh(60 / (std::numbers::pi_v<real> * std::min<real>(s, 1))) + 0.5L;
  }

  real half_width() const { return half_width_; }

  real f(real t) const {
    const real pi = std::numbers::pi_v<real>;
    real u = pi * std::sinh(t);
    real lw, l1w;  // log w, log(1-w)
    if (u >= 0) {
      real e = std::log1p(std::exp(-u));
      lw = -e;
      l1w = -u - e;
    } else {
      real e = std::log1p(std::exp(u));
      lw = u - e;
      l1w = -e;
    }
    real w = std::exp(lw);
    // dw/dt = pi cosh t w (1-w)
    real log_mag = s_ * lw + l1w + std::log(pi * std::cosh(t)) - n1_ * std::log1p(w);
    if (log_mag < -11000) return 0;
    return std::exp(log_mag) * std::pow(lw, static_cast<real>(beta_));
  }

 private:
  real s_;
  unsigned beta_;
  real n1_;
  real half_width_;
};

// Trapezoid sum over t = k h for |t| <= half width.
real trapezoid_points(const TanhSinh& q, real h, bool odd_only) {
  real sum = 0;
  long kmax = static_cast<long>(std::ceil(q.half_width() / h));
  for (long k = -kmax; k <= kmax; ++k) {
    if (odd_only && k % 2 == 0) continue;
    sum += q.f(static_cast<real>(k) * h);
  }
  return sum;
}

}  // namespace

BetaIntegralValue beta_integral_closed(const Rational& gamma, unsigned beta, unsigned long n, long precision_bits) {
  check_range(gamma, n);
  const long wp = precision_bits + kGuardBits + 16;
  Rational other = Rational(static_cast<long>(n) + 1) - gamma;
  BigFloat log_beta = log_gamma(gamma, wp) + log_gamma(other, wp) - log_gamma(Rational(static_cast<long>(n) + 1), wp);
  BigFloat p = p_beta_polynomial(beta).evaluate(gamma, n, wp);
  BetaIntegralValue out{gamma, beta, n, (exp(log_beta) * p).with_precision(precision_bits), 0.0, "closed"};
  return out;
}

BetaIntegralValue beta_integral_quad(const Rational& gamma, unsigned beta, unsigned long n, double rel_tol) {
  check_range(gamma, n);
  if (!(rel_tol >= 1e-12)) throw UserError("quadrature tolerance must be at least 1e-12");
  // I = J(gamma) + (-1)^beta J(n+1-gamma): z in (0,1] directly, z = 1/w on the tail.
  const real g = mpfr_get_ld(BigFloat(gamma, 128).get(), MPFR_RNDN);
  const real other = static_cast<real>(n) + 1 - g;
  TanhSinh left(g, beta, n), right(other, beta, n);
  const real sign = beta % 2 == 0 ? 1 : -1;
  const int max_level = 14;

  real h = 0.5L;
  real sl = trapezoid_points(left, h, false), sr = trapezoid_points(right, h, false);
  real previous = h * (sl + sign * sr);
  for (int level = 1; level <= max_level; ++level) {
    h /= 2;
    sl += trapezoid_points(left, h, true);
    sr += trapezoid_points(right, h, true);
    real value = h * (sl + sign * sr);
    real scale = std::max(std::fabs(value), h * (std::fabs(sl) + std::fabs(sr)));
    real diff = std::fabs(value - previous);
    // Tanh-sinh converges quadratically, so the last difference bounds the
    // error of the previous level and overestimates the current one.
    if (level >= 3 && diff <= static_cast<real>(rel_tol) * scale) {
      BigFloat v(static_cast<double>(value), 64);
      mpfr_set_ld(v.get(), value, MPFR_RNDN);
      return {gamma, beta, n, v, static_cast<double>(diff), "quadrature"};
    }
    previous = value;
  }
  throw NumericalError("Beta integral quadrature did not converge to rel_tol " + std::to_string(rel_tol));
}

}  // namespace nilsson
