#include <doctest.h>

#include <cmath>

#include "nilsson/error.hpp"
#include "nilsson/gammakit/beta_integral.hpp"
#include "nilsson/gammakit/gamma_series.hpp"
#include "nilsson/gammakit/polygamma.hpp"
#include "support/generators.hpp"

using namespace nilsson;
using nilsson::testing::uniform_int;

namespace {

constexpr long kPrec = 192;

BigFloat zeta(unsigned long s, long prec) {
  BigFloat out(prec);
  mpfr_zeta_ui(out.get(), s, MPFR_RNDN);
  return out;
}

BigFloat mpfr_lgamma_of(const Rational& x, long prec) {
  BigFloat arg(x, prec), out(prec);
  int sign = 0;
  mpfr_lgamma(out.get(), &sign, arg.get(), MPFR_RNDN);
  return out;
}

double rel_err(const BigFloat& a, const BigFloat& b) { return (abs(a - b) / abs(b)).to_double(); }

bool agrees(const BigFloat& a, const BigFloat& b, long bits) {
  return abs(a - b) <= ldexp(max(abs(b), BigFloat(1.0, b.precision())), -bits);
}

// Elementary symmetric e_k(1..m) and complete homogeneous h_k(0..m-1).
std::vector<Rational> elementary(long m, std::size_t K) {
  std::vector<Rational> e(K + 1, Rational(0));
  e[0] = Rational(1);
  for (long j = 1; j <= m; ++j)
    for (std::size_t k = std::min<std::size_t>(K, static_cast<std::size_t>(j)); k >= 1; --k) e[k] += Rational(j) * e[k - 1];
  return e;
}

std::vector<Rational> complete(long m, std::size_t K) {
  std::vector<Rational> h(K + 1, Rational(0));
  h[0] = Rational(1);
  for (long j = 0; j < m; ++j)
    for (std::size_t k = 1; k <= K; ++k) h[k] += Rational(j) * h[k - 1];
  return h;
}

}  // namespace

TEST_CASE("gamma_ratio_series low-order coefficients") {
  auto c = gamma_ratio_series_symbolic(2);
  REQUIRE(c.size() == 3);
  CHECK(c[0] == Polynomial{Rational(1)});
  CHECK(c[1] == Polynomial{Rational(0), Rational(-1, 2), Rational(1, 2)});
  CHECK(c[2] == Polynomial{Rational(0), Rational(2, 24), Rational(-3, 24), Rational(-2, 24), Rational(3, 24)});
  for (int i = 0; i < 20; ++i) {
    Rational g = nilsson::testing::random_rational(20, 7);
    auto s = gamma_ratio_series(g, 2);
    CHECK(s.coefficients[1] == (g * g - g) / Rational(2));
    CHECK(s.coefficients[2] == (Rational(3) * g.pow(4) - Rational(2) * g.pow(3) - Rational(3) * g * g + Rational(2) * g) /
                                   Rational(24));
  }
}

TEST_CASE("gamma_ratio_series trivial gammas") {
  auto one = gamma_ratio_series(Rational(1), 6);
  CHECK(one.coefficients[0] == Rational(1));
  for (std::size_t k = 1; k <= 6; ++k) CHECK(one.coefficients[k].is_zero());
  auto zero = gamma_ratio_series(Rational(0), 6);
  CHECK(zero.coefficients[0] == Rational(1));
  for (std::size_t k = 1; k <= 6; ++k) CHECK(zero.coefficients[k].is_zero());
}

TEST_CASE("gamma_ratio_series at integer gamma matches exact products") {
  const std::size_t K = 12;
  for (long m = 1; m <= 6; ++m) {
    // Gamma(n+1+m)/Gamma(n+1) = n^m prod_{j=1}^m (1 + j/n)
    CHECK(gamma_ratio_series(Rational(-m), K).coefficients == elementary(m, K));
    // Gamma(n+1-m)/Gamma(n+1) = n^-m prod_{j<m} (1 - j/n)^-1
    CHECK(gamma_ratio_series(Rational(m), K).coefficients == complete(m, K));
  }
  // The symbolic form evaluated at gamma agrees with the direct one.
  auto sym = gamma_ratio_series_symbolic(8);
  for (int i = 0; i < 10; ++i) {
    Rational g = nilsson::testing::random_rational(9, 5);
    auto direct = gamma_ratio_series(g, 8);
    for (std::size_t k = 0; k <= 8; ++k) CHECK(sym[k](g) == direct.coefficients[k]);
  }
}

TEST_CASE("gamma_ratio_series truncation error is of the next order") {
  const long prec = 320;
  for (Rational g : {Rational(1, 3), Rational(1, 2), Rational(3, 4)}) {
    for (std::size_t K : {1u, 2u, 4u}) {
      auto s = gamma_ratio_series(g, K + 1);
      std::vector<double> constants;
      for (long n : {100L, 1000L, 10000L}) {
        BigFloat nn(Rational(n), prec);
        BigFloat ratio =
            exp(mpfr_lgamma_of(Rational(n + 1) - g, prec) - mpfr_lgamma_of(Rational(n + 1), prec));
        BigFloat approx(prec);
        for (std::size_t k = 0; k <= K; ++k) approx += BigFloat(s.coefficients[k], prec) / pow(nn, static_cast<long>(k));
        BigFloat scale = pow(nn, BigFloat(g, prec));  // n^gamma
        BigFloat err = abs(ratio * scale - approx) * pow(nn, static_cast<long>(K) + 1);
        constants.push_back(err.to_double());
      }
      double ck = std::fabs(s.coefficients[K + 1].to_double());
      INFO("gamma ", g.str(), " K ", K);
      CHECK(*std::max_element(constants.begin(), constants.end()) <=
            1.5 * *std::min_element(constants.begin(), constants.end()));
      CHECK(constants.back() == doctest::Approx(ck).epsilon(0.01));
    }
  }
}

TEST_CASE("bernoulli numbers") {
  auto b = bernoulli_numbers(12);
  CHECK(b[0] == Rational(1));
  CHECK(b[1] == Rational(-1, 2));
  CHECK(b[2] == Rational(1, 6));
  CHECK(b[3].is_zero());
  CHECK(b[4] == Rational(-1, 30));
  CHECK(b[12] == Rational(-691, 2730));
  CHECK(bernoulli_polynomial(2) == Polynomial{Rational(1, 6), Rational(-1), Rational(1)});
}

TEST_CASE("polygamma examples") {
  BigFloat psi1 = polygamma(0, Rational(1), kPrec);
  CHECK(agrees(psi1, -euler_gamma(kPrec), kPrec - kGuardBits));
  CHECK(psi1.to_double() == doctest::Approx(-0.5772156649015329).epsilon(1e-15));
  CHECK(agrees(polygamma(0, Rational(2), kPrec) - psi1, BigFloat(1.0, kPrec), kPrec - kGuardBits));
  BigFloat p = pi(kPrec);
  CHECK(agrees(polygamma(1, Rational(1), kPrec), p * p / BigFloat(6.0, kPrec), kPrec - kGuardBits));
  CHECK_THROWS_AS(polygamma(0, Rational(0), kPrec), UserError);
  CHECK_THROWS_AS(polygamma(2, Rational(-1, 2), kPrec), UserError);
}

TEST_CASE("polygamma at integers and half-integers matches zeta values") {
  for (unsigned k = 0; k <= 6; ++k) {
    Integer kf = factorial(k);
    for (long m = 1; m <= 40; m += 3) {
      BigFloat expect(kPrec);
      if (k == 0) {
        Rational harmonic(0);
        for (long j = 1; j < m; ++j) harmonic += Rational(1, j);
        expect = BigFloat(harmonic, kPrec) - euler_gamma(kPrec);
      } else {
        Rational partial(0);
        for (long j = 1; j < m; ++j) partial += Rational(j).pow(-static_cast<long>(k) - 1);
        expect = BigFloat(Rational(kf), kPrec) * (zeta(k + 1, kPrec) - BigFloat(partial, kPrec));
        if (k % 2 == 0) expect = -expect;
      }
      INFO("k ", k, " m ", m);
      CHECK(agrees(polygamma(k, Rational(m), kPrec), expect, kPrec - kGuardBits - 2));
    }
    // psi^(k)(1/2) = (-1)^(k+1) k! (2^(k+1) - 1) zeta(k+1); psi(1/2) = -gamma_E - 2 log 2.
    BigFloat half(kPrec);
    if (k == 0) {
      half = -euler_gamma(kPrec) - BigFloat(2.0, kPrec) * log(BigFloat(2.0, kPrec));
    } else {
      half = BigFloat(Rational(Integer(kf * ((Integer(1) << (k + 1)) - 1))), kPrec) * zeta(k + 1, kPrec);
      if (k % 2 == 0) half = -half;
    }
    CHECK(agrees(polygamma(k, Rational(1, 2), kPrec), half, kPrec - kGuardBits - 2));
  }
}

TEST_CASE("polygamma reflection identities at random rationals") {
  BigFloat p = pi(kPrec);
  for (int i = 0; i < 40; ++i) {
    long q = uniform_int(2, 50);
    Rational x(uniform_int(1, q - 1), q);
    BigFloat px = p * BigFloat(x, kPrec);
    // psi(1-x) - psi(x) = pi cot(pi x)
    BigFloat lhs = polygamma(0, Rational(1) - x, kPrec) - polygamma(0, x, kPrec);
    BigFloat cot = cos(px) / sin(px);
    INFO("x = ", x.str());
    CHECK(abs(lhs - p * cot) <= ldexp(BigFloat(1.0, kPrec), -(kPrec - 24)) * max(BigFloat(1.0, kPrec), abs(lhs)));
    // psi'(1-x) + psi'(x) = pi^2 / sin^2(pi x)
    BigFloat s = sin(px);
    BigFloat rhs = p * p / (s * s);
    CHECK(rel_err(polygamma(1, Rational(1) - x, kPrec) + polygamma(1, x, kPrec), rhs) < 1e-50);
    // Recurrence across a unit shift at order 3.
    BigFloat step = polygamma(3, x + Rational(1), kPrec) - polygamma(3, x, kPrec);
    CHECK(rel_err(step, BigFloat(Rational(-6) * x.pow(-4), kPrec)) < 1e-50);
  }
}

TEST_CASE("log_gamma") {
  BigFloat p = pi(kPrec);
  CHECK(agrees(log_gamma(Rational(1, 2), kPrec), log(p) / BigFloat(2.0, kPrec), kPrec - kGuardBits));
  CHECK(log_gamma(Rational(1), kPrec).is_zero());
  CHECK(agrees(log_gamma(Rational(11), kPrec), log(Integer(3628800), kPrec), kPrec - kGuardBits));
  CHECK_THROWS_AS(log_gamma(Rational(-1), kPrec), UserError);
}

TEST_CASE("p_beta polynomials of low order") {
  CHECK(p_beta_polynomial(0) == PolygammaPolynomial::constant(Rational(1)));
  CHECK(p_beta_polynomial(0).latex() == "1");
  CHECK(p_beta_polynomial(1) == PolygammaPolynomial::parse_latex("-\\psi(n+1-\\gamma)+\\psi(\\gamma)"));
  CHECK(p_beta_polynomial(2) ==
        PolygammaPolynomial::parse_latex("\\psi(n+1-\\gamma)^2 + \\psi^{(1)}(n+1-\\gamma) -2 \\psi(\\gamma) "
                                         "\\psi(n+1-\\gamma)\n+\\psi(\\gamma)^2 + \\psi^{(1)}(\\gamma)"));
  // p_3 by hand: d/dgamma p_2 + (u0 - v0) p_2.
  CHECK(p_beta_polynomial(3) ==
        PolygammaPolynomial::parse_latex(
            "\\psi(\\gamma)^3 - 3\\psi(\\gamma)^2\\psi(n+1-\\gamma) + 3\\psi(\\gamma)\\psi(n+1-\\gamma)^2"
            " - \\psi(n+1-\\gamma)^3 + 3\\psi(\\gamma)\\psi^{(1)}(\\gamma) + 3\\psi(\\gamma)\\psi^{(1)}(n+1-\\gamma)"
            " - 3\\psi(n+1-\\gamma)\\psi^{(1)}(\\gamma) - 3\\psi(n+1-\\gamma)\\psi^{(1)}(n+1-\\gamma)"
            " + \\psi^{(2)}(\\gamma) - \\psi^{(2)}(n+1-\\gamma)"));
  for (unsigned b = 0; b <= kMaxPolygammaBeta; ++b) {
    auto p = p_beta_polynomial(b);
    CHECK(PolygammaPolynomial::parse_latex(p.latex()) == p);
    CHECK(p.max_order() == static_cast<int>(b) - 1);
  }
  CHECK_THROWS_AS(p_beta_polynomial(kMaxPolygammaBeta + 1), UserError);
  CHECK_THROWS_AS(PolygammaPolynomial::parse_latex("\\psi(x)"), ParseError);
  CHECK_THROWS_AS(PolygammaPolynomial::parse_latex(""), ParseError);
  CHECK_THROWS_AS(PolygammaPolynomial::parse_latex("\\psi(\\gamma) \\psi"), ParseError);
  CHECK(PolygammaPolynomial::parse_latex("\\frac{1}{2}\\psi^{(3)}(\\gamma)^{2} - 7").latex() ==
        "\\frac{1}{2} \\psi^{(3)}(\\gamma)^2 - 7");
}

TEST_CASE("beta_integral examples") {
  BigFloat p = pi(kPrec);
  CHECK(agrees(beta_integral_closed(Rational(1, 2), 0, 0, kPrec).value, p, kPrec - kGuardBits));
  CHECK(agrees(beta_integral_closed(Rational(1), 0, 1, kPrec).value, BigFloat(1.0, kPrec), kPrec - kGuardBits));
  CHECK(agrees(beta_integral_closed(Rational(3, 2), 0, 2, kPrec).value, p / BigFloat(8.0, kPrec), kPrec - kGuardBits));

  auto q = beta_integral_quad(Rational(1, 2), 0, 0, 1e-12);
  CHECK(q.value.to_double() == doctest::Approx(M_PI).epsilon(1e-12));
  CHECK(q.method == "quadrature");
  CHECK(beta_integral_quad(Rational(3, 2), 0, 2, 1e-12).value.to_double() == doctest::Approx(M_PI / 8).epsilon(1e-12));

  auto closed = beta_integral_closed(Rational(1, 2), 1, 10, kPrec);
  auto quad = beta_integral_quad(Rational(1, 2), 1, 10, 1e-12);
  CHECK(rel_err(quad.value.with_precision(kPrec), closed.value) < 1e-10);
  auto c5 = beta_integral_closed(Rational(1, 2), 2, 5, kPrec);
  auto q5 = beta_integral_quad(Rational(1, 2), 2, 5, 1e-12);
  CHECK(rel_err(q5.value.with_precision(kPrec), c5.value) < 1e-12);

  CHECK_THROWS_AS(beta_integral_closed(Rational(0), 0, 3, kPrec), UserError);
  CHECK_THROWS_AS(beta_integral_closed(Rational(4), 0, 3, kPrec), UserError);
  CHECK_THROWS_AS(beta_integral_quad(Rational(1, 2), 0, 3, 1e-14), UserError);
  CHECK_THROWS_AS(beta_integral_quad(Rational(5, 2), 1, 1, 1e-8), UserError);
}

TEST_CASE("closed form and quadrature agree on the grid") {
  for (Rational g : {Rational(1, 3), Rational(1, 2), Rational(3, 4)})
    for (unsigned beta : {0u, 1u, 2u})
      for (unsigned long n : {3ul, 7ul, 15ul}) {
        auto c = beta_integral_closed(g, beta, n, kPrec);
        auto q = beta_integral_quad(g, beta, n, 1e-12);
        INFO("gamma ", g.str(), " beta ", beta, " n ", n);
        CHECK(rel_err(q.value.with_precision(kPrec), c.value) <= 1e-10);
      }
}

TEST_CASE("Beta integrals behave like n^-gamma Gamma(gamma)") {
  const unsigned long n = 10000;
  for (Rational g : {Rational(1, 3), Rational(1, 2), Rational(3, 4)}) {
    BigFloat nn(Rational(static_cast<long>(n)), kPrec);
    BigFloat measured = beta_integral_closed(g, 0, n, kPrec).value * pow(nn, BigFloat(g, kPrec)) /
                        exp(log_gamma(g, kPrec));
    auto s = gamma_ratio_series(g, 2);
    BigFloat predicted = BigFloat(1.0, kPrec) + BigFloat(s.coefficients[1], kPrec) / nn +
                         BigFloat(s.coefficients[2], kPrec) / (nn * nn);
    CHECK(std::fabs((measured - predicted).to_double()) < 1e-3);
    // The next omitted term is O(n^-3).
    CHECK(std::fabs((measured - predicted).to_double()) < 1e-11);
  }
}

TEST_CASE("gamma-derivative of I raises beta") {
  const Rational h(1, 10000);
  for (Rational g : {Rational(1, 3), Rational(1, 2), Rational(3, 4)})
    for (unsigned beta : {0u, 1u, 2u})
      for (unsigned long n : {3ul, 15ul}) {
        BigFloat up = beta_integral_closed(g + h, beta, n, kPrec).value;
        BigFloat down = beta_integral_closed(g - h, beta, n, kPrec).value;
        BigFloat central = (up - down) / BigFloat(Rational(2) * h, kPrec);
        BigFloat exact = beta_integral_closed(g, beta + 1, n, kPrec).value;
        INFO("gamma ", g.str(), " beta ", beta, " n ", n);
        // O(h^2) = 1e-8 relative, with room for the third derivative's size.
        CHECK(rel_err(central, exact) < 1e-6);
      }
}
