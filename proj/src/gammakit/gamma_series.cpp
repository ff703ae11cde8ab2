#include "nilsson/gammakit/gamma_series.hpp"

#include <mutex>

namespace nilsson {

std::vector<Rational> bernoulli_numbers(std::size_t m) {
  static std::mutex mutex;
  static std::vector<Rational> cache = {Rational(1)};
  std::lock_guard<std::mutex> lock(mutex);
  while (cache.size() <= m) {
    long k = static_cast<long>(cache.size());
    if (k % 2 == 1 && k > 1) {
      cache.emplace_back(0);
      continue;
    }
    Rational acc(0);
    for (long j = 0; j < k; ++j) acc += Rational(binomial(k + 1, j)) * cache[static_cast<std::size_t>(j)];
    cache.push_back(-acc / Rational(k + 1));
  }
  return std::vector<Rational>(cache.begin(), cache.begin() + static_cast<std::ptrdiff_t>(m) + 1);
}

Polynomial bernoulli_polynomial(std::size_t m) {
  auto b = bernoulli_numbers(m);
  std::vector<Rational> c(m + 1);
  long mm = static_cast<long>(m);
  for (long j = 0; j <= mm; ++j)
    c[static_cast<std::size_t>(mm - j)] = Rational(binomial(mm, j)) * b[static_cast<std::size_t>(j)];
  return Polynomial(std::move(c));
}

namespace {

// p(a) for a fixed rational argument a.
Rational substitute(const Polynomial& p, const Rational& a) { return p(a); }

// p(1 - gamma) as a polynomial in gamma (the symbolic argument is always
// 1 - gamma).
Polynomial substitute(const Polynomial& p, const Polynomial&) {
  std::vector<Rational> reflected = p.coefficients();
  for (std::size_t i = 1; i < reflected.size(); i += 2) reflected[i] = -reflected[i];
  return Polynomial(std::move(reflected)).shifted(Rational(-1));
}

// log Gamma(n+1-gamma) - log Gamma(n+1) + gamma log n
//   = sum_{k>=1} (-1)^(k+1) (B_{k+1}(1-gamma) - B_{k+1}(1)) / (k(k+1)) n^(-k),
// the generalized Stirling series centred at n itself, so no re-expansion
// from n+1 is needed. Exponentiated with e_m = (1/m) sum_{k=1}^m k l_k e_{m-k}.
template <class T>
std::vector<T> ratio_series(const T& one_minus_gamma, const T& one, std::size_t K) {
  const T zero = one_minus_gamma - one_minus_gamma;
  std::vector<T> l(K + 1, zero);
  for (std::size_t k = 1; k <= K; ++k) {
    Polynomial b = bernoulli_polynomial(k + 1);
    Rational scale(k % 2 == 1 ? 1 : -1, static_cast<long>(k * (k + 1)));
    l[k] = scale * (substitute(b, one_minus_gamma) - b(Rational(1)) * one);
  }
  std::vector<T> e(K + 1, zero);
  e[0] = one;
  for (std::size_t m = 1; m <= K; ++m) {
    T acc = zero;
    for (std::size_t k = 1; k <= m; ++k)
      acc = acc + Rational(static_cast<long>(k), static_cast<long>(m)) * (l[k] * e[m - k]);
    e[m] = acc;
  }
  return e;
}

}  // namespace

GammaRatioSeries gamma_ratio_series(const Rational& gamma, std::size_t K) {
  return {gamma, K, ratio_series<Rational>(Rational(1) - gamma, Rational(1), K)};
}

std::vector<Polynomial> gamma_ratio_series_symbolic(std::size_t K) {
  return ratio_series<Polynomial>(Polynomial{Rational(1), Rational(-1)}, Polynomial{Rational(1)}, K);
}

}  // namespace nilsson
