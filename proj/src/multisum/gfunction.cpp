#include "nilsson/multisum/gfunction.hpp"

#include <cmath>
#include <limits>

#include "nilsson/error.hpp"
#include "nilsson/exactnum/bigfloat.hpp"

namespace nilsson {

namespace {

constexpr long kWork = 128;

// log |q| (or -inf for q = 0) without overflowing doubles.
double log_abs(const Rational& q) {
  if (q.is_zero()) return -std::numeric_limits<double>::infinity();
  return (log(Integer(abs(q.num())), kWork) - log(q.den(), kWork)).to_double();
}

struct Halves {
  double all, first, second;
};

Halves window_max(const std::vector<double>& per_n, std::size_t lo, std::size_t hi) {
  std::size_t mid = lo + (hi - lo) / 2;
  Halves h{0, 0, 0};
  for (std::size_t n = lo; n <= hi; ++n) {
    double v = per_n[n];
    h.all = std::max(h.all, v);
    (n <= mid ? h.first : h.second) = std::max(n <= mid ? h.first : h.second, v);
  }
  return h;
}

bool stable(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || a <= 0 || b <= 0) return false;
  return std::max(a, b) / std::min(a, b) <= 1.2;
}

}  // namespace

GFunctionReport gfunction_diagnostic(const std::vector<Rational>& values, std::size_t lo, std::size_t hi) {
  if (lo < 1 || lo >= hi || hi >= values.size())
    throw UserError("gfunction window must satisfy 1 <= lo < hi < number of values");
  std::vector<double> size(values.size(), 0.0), denom(values.size(), 0.0);
  Integer lcm = 1;
  for (std::size_t n = 0; n <= hi; ++n) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), values[n].den().get_mpz_t());
    if (n == 0) continue;
    double ln = log_abs(values[n]);
    size[n] = std::isfinite(ln) ? std::exp(ln / static_cast<double>(n)) : 0.0;
    denom[n] = std::exp(log(lcm, kWork).to_double() / static_cast<double>(n));
  }
  auto s = window_max(size, lo, hi);
  auto d = window_max(denom, lo, hi);
  GFunctionReport rep;
  rep.size_C = s.all;
  rep.size_C_first = s.first;
  rep.size_C_second = s.second;
  rep.denom_C = d.all;
  rep.denom_C_first = d.first;
  rep.denom_C_second = d.second;
  bool size_ok = stable(s.first, s.second);
  bool denom_ok = stable(d.first, d.second);
  rep.compatible = size_ok && denom_ok;
  if (rep.compatible) {
    rep.note = "G-function-compatible growth: size and denominator bounds stable across window halves";
  } else {
    rep.note = "not G-function-compatible on this window:";
    if (!size_ok) rep.note += " |a_n|^(1/n) unstable across halves;";
    if (!denom_ok) rep.note += " denominator growth unstable across halves;";
    rep.note.pop_back();
  }
  return rep;
}

}  // namespace nilsson
