#include <doctest.h>

#include <fstream>
#include <sstream>

#include "nilsson/error.hpp"
#include "nilsson/recurrence/formal.hpp"
#include "support/generators.hpp"
#include "support/tet6j_reference.hpp"

using namespace nilsson;
using nilsson::testing::uniform_int;
using NFE = NumberFieldElement;

namespace {

constexpr long kPrec = 256;

std::string read_data(const std::string& name) {
  std::ifstream in(std::string(NILSSON_DATA_DIR) + "/" + name);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Recurrence two_three() { return parse_recurrence(R"({"order": 2, "coeffs": [[6],[-5],[1]], "initial": ["2","5"]})"); }

// (n+1)^3 a_{n+2} - (34n^3+51n^2+27n+5) a_{n+1} + n^3 a_n = 0
Recurrence apery_textbook() {
  return parse_recurrence(R"({"coeffs": [[0,0,0,1],[-5,-27,-51,-34],[1,3,3,1]]})");
}

// The same recurrence shifted by one index: generates 1, 5, 73, 1445, ...
Recurrence apery() { return parse_recurrence(read_data("apery.recurrence.json")); }

Recurrence tet6j() { return parse_recurrence(read_data("tet6j.recurrence.json")); }

// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double n = static_cast<double>(x.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double residual_slope(const Recurrence& rec, const FormalSolution& sol) {
  std::vector<unsigned long> grid;
  for (int e = 6; e <= 12; ++e) grid.push_back(1ul << e);
  auto r = residual_check(rec, sol, grid, kPrec);
  std::vector<double> x, y;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    x.push_back(static_cast<double>(grid[i]));
    y.push_back(r[i].to_double());
  }
  return loglog_slope(x, y);
}

// Independent oracle for the tetrahedron sequence:
// n!^6/(3n+1)!^2 * sum_{k=3n}^{4n} (-1)^k (k+1)! / ((k-3n)!^4 (4n-k)!^3).
Rational tet6j_direct(long n) {
  Rational sum(0);
  for (long k = 3 * n; k <= 4 * n; ++k) {
    Rational t(factorial(static_cast<unsigned long>(k + 1)));
    t /= Rational(factorial(static_cast<unsigned long>(k - 3 * n))).pow(4);
    t /= Rational(factorial(static_cast<unsigned long>(4 * n - k))).pow(3);
    sum += (k % 2 == 0) ? t : -t;
  }
  return sum * Rational(factorial(static_cast<unsigned long>(n))).pow(6) /
         Rational(factorial(static_cast<unsigned long>(3 * n + 1))).pow(2);
}

}  // namespace

TEST_CASE("parse_recurrence examples") {
  auto r = two_three();
  CHECK(r.order() == 2);
  CHECK(r.coeffs[1] == Polynomial({Rational(-5)}));
  auto a = apery_textbook();
  CHECK(a.order() == 2);
  CHECK(a.coeffs[2] == Polynomial({Rational(1), Rational(3), Rational(3), Rational(1)}));
  CHECK_FALSE(a.initial.has_value());

  try {
    parse_recurrence("{\n  \"coeffs\": [[1],\n   [2,]]\n}");
    FAIL("expected a syntax error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() > 1);
  }
  CHECK_THROWS_AS(parse_recurrence(R"({"order": 3, "coeffs": [[1],[1]]})"), UserError);
  CHECK_THROWS_AS(parse_recurrence(R"({"coeffs": [[1],[0, 0]]})"), UserError);
  CHECK_THROWS_AS(parse_recurrence(R"({"coeffs": [[1],[1]], "initial": ["1", "2"]})"), UserError);
  CHECK_THROWS_AS(parse_recurrence(R"({"coeffs": [[1]]})"), UserError);
  CHECK_THROWS_AS(parse_recurrence(R"({"coeffs": [["x"],[1]]})"), UserError);
}

TEST_CASE("recurrence serialization round-trips byte-identically") {
  for (const auto& rec : {two_three(), apery_textbook(), apery(), tet6j()}) {
    std::string text = recurrence_to_text(rec);
    CHECK(recurrence_to_text(parse_recurrence(text)) == text);
  }
  // Non-rational initial values carry their field.
  auto r = parse_recurrence(R"({"coeffs": [[-2],[1]], "initial": [[["1","1"],["1","2"]]], "minpoly": [2,0,1]})");
  std::string text = recurrence_to_text(r);
  CHECK(recurrence_to_text(parse_recurrence(text)) == text);
  CHECK(unroll(r, 3)[3] == NFE(r.field, {Rational(8), Rational(4)}));
}

TEST_CASE("unroll examples") {
  CHECK(unroll(two_three(), 5)[5] == NFE(Rational(275)));
  auto fib = parse_recurrence(R"({"coeffs": [[-1],[-1],[1]], "initial": ["0","1"]})");
  CHECK(unroll(fib, 10)[10] == NFE(Rational(55)));
  auto ap = unroll(apery(), 6);
  CHECK(ap[2] == NFE(Rational(73)));
  CHECK(ap[6] == NFE(Rational(21460825)));
  CHECK(unroll(two_three(), 0).size() == 1);

  // p_L(n) = n - 3 vanishes at n = 3.
  auto bad = parse_recurrence(R"({"coeffs": [[1],[-3, 1]], "initial": ["1"]})");
  try {
    unroll(bad, 10);
    FAIL("expected a vanishing leading coefficient");
  } catch (const UserError& e) {
    CHECK(std::string(e.what()).find("n = 3") != std::string::npos);
  }
  CHECK_THROWS_AS(unroll(apery_textbook(), 5), UserError);
}

TEST_CASE("unrolled 6j recurrence equals the defining sum") {
  auto vals = unroll(tet6j(), 60);
  for (long n = 0; n <= 60; ++n) {
    INFO("n = ", n);
    CHECK(vals[static_cast<std::size_t>(n)] == NFE(tet6j_direct(n)));
  }
}

TEST_CASE("characteristic_polynomial examples") {
  CHECK(characteristic_polynomial(two_three()) == Polynomial({Rational(6), Rational(-5), Rational(1)}));
  CHECK(characteristic_polynomial(apery_textbook()) == Polynomial({Rational(1), Rational(-34), Rational(1)}));
  CHECK(characteristic_polynomial(apery()) == Polynomial({Rational(1), Rational(-34), Rational(1)}));
  auto low = parse_recurrence(R"({"coeffs": [[1],[0,1],[0,2]]})");
  CHECK(characteristic_polynomial(low)[0].is_zero());
  CHECK(characteristic_polynomial(tet6j()) ==
        Rational(115) * Polynomial({Rational(729), Rational(-658), Rational(729)}));
}

TEST_CASE("characteristic polynomial has the geometric ratio as a root") {
  for (int trial = 0; trial < 200; ++trial) {
    long mu = uniform_int(-9, 9), nu = uniform_int(-9, 9);
    long c = uniform_int(1, 20);
    // a_{n+2} - (mu+nu) a_{n+1} + mu nu a_n = 0 is satisfied by c mu^n.
    Recurrence rec;
    rec.coeffs = {Polynomial({Rational(mu * nu)}), Polynomial({Rational(-(mu + nu))}), Polynomial({Rational(1)})};
    rec.initial = std::vector<NFE>{NFE(Rational(c)), NFE(Rational(c * mu))};
    CHECK(characteristic_polynomial(rec)(Rational(mu)).is_zero());
    auto v = unroll(rec, 8);
    CHECK(v[8] == NFE(Rational(c) * Rational(mu).pow(8)));
  }
}

TEST_CASE("formal_solutions: constant coefficients") {
  auto sols = formal_solutions(two_three(), 10, kPrec);
  REQUIRE(sols.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    REQUIRE(sols[i].exact.has_value());
    CHECK(sols[i].exact->lambda == NFE(Rational(static_cast<long>(i) + 2)));
    CHECK(sols[i].exact->alpha.is_zero());
    CHECK(sols[i].alpha_rational == Rational(0));
    CHECK(sols[i].exact->g[0] == NFE(Rational(1)));
    for (std::size_t k = 1; k <= 10; ++k) CHECK(sols[i].exact->g[k].is_zero());
  }
}

TEST_CASE("formal_solutions: Apery") {
  for (const auto& rec : {apery_textbook(), apery()}) {
    auto sols = formal_solutions(rec, 8, kPrec);
    REQUIRE(sols.size() == 2);
    auto k = sols[0].exact->context.field;
    CHECK(k->minpoly() == std::vector<Integer>{-2, 0, 1});
    NFE t = NFE::theta(k);
    CHECK(sols[0].exact->lambda == NFE(k, Rational(17)) - t * Rational(12));
    CHECK(sols[1].exact->lambda == NFE(k, Rational(17)) + t * Rational(12));
    for (const auto& s : sols) CHECK(s.alpha_rational == Rational(-3, 2));
    CHECK(sols[1].exact->g[1] == sols[0].exact->g[1].conjugate());
  }

  // Cross-check alpha by a log-log fit of unrolled data divided by lambda^n.
  auto vals = unroll(apery(), 400);
  BigFloat lam = BigFloat(17.0, 128) + BigFloat(12.0, 128) * sqrt(BigFloat(2.0, 128));
  std::vector<double> x, y;
  for (std::size_t n = 200; n <= 400; n += 10) {
    BigFloat v(vals[n].to_rational(), 128);
    x.push_back(static_cast<double>(n));
    y.push_back(exp(log(v) - BigFloat(static_cast<double>(n), 128) * log(lam)).to_double());
  }
  CHECK(loglog_slope(x, y) == doctest::Approx(-1.5).epsilon(0.05 / 1.5));
}

TEST_CASE("formal_solutions: tetrahedron recurrence reproduces the reference series") {
  auto sols = formal_solutions(tet6j(), 6, kPrec);
  REQUIRE(sols.size() == 2);
  auto k = nilsson::testing::tet6j_field();
  auto ref_g = nilsson::testing::tet6j_g_plus(k);
  auto lp = nilsson::testing::tet6j_lambda_plus(k);
  // The lambda with negative imaginary part comes first in (real, imag) order.
  const auto& plus = *sols[0].exact;
  CHECK(*plus.context.field == *k);
  CHECK(plus.context.root == 1);
  CHECK(plus.lambda == lp);
  CHECK(sols[1].exact->lambda == lp.conjugate());
  CHECK(plus.alpha == NFE(k, Rational(-3, 2)));
  for (std::size_t j = 0; j <= 6; ++j) {
    INFO("c_", j);
    CHECK(plus.g[j] == ref_g[j]);
    CHECK(sols[1].exact->g[j] == ref_g[j].conjugate());
  }
  CHECK(abs(sols[0].lambda.abs() - BigFloat(1.0, kPrec)) <= ldexp(BigFloat(1.0, kPrec), -200));
}

TEST_CASE("formal_solutions is exact: precision only affects the numeric view") {
  auto lo = formal_solutions(tet6j(), 8, 64);
  auto hi = formal_solutions(tet6j(), 8, 512);
  REQUIRE(lo.size() == hi.size());
  for (std::size_t i = 0; i < lo.size(); ++i) {
    CHECK(lo[i].exact->lambda == hi[i].exact->lambda);
    CHECK(lo[i].exact->alpha == hi[i].exact->alpha);
    CHECK(lo[i].exact->g == hi[i].exact->g);
  }
}

TEST_CASE("formal_solutions error regimes") {
  // (x - 1)^2: repeated root.
  CHECK_THROWS_AS(formal_solutions(parse_recurrence(R"({"coeffs": [[1],[-2],[1]]})"), 4, kPrec), UnsupportedError);
  // deg p_0 < D: zero root.
  CHECK_THROWS_AS(formal_solutions(parse_recurrence(R"({"coeffs": [[1],[0,-3],[0,1]]})"), 4, kPrec),
                  UnsupportedError);
  // deg p_L < D: ramified.
  CHECK_THROWS_AS(formal_solutions(parse_recurrence(R"({"coeffs": [[0,1],[0,-3],[1]]})"), 4, kPrec),
                  UnsupportedError);
  CHECK_THROWS_AS(formal_solutions(two_three(), 4, 40), UserError);
}

TEST_CASE("formal_solutions numeric fallback for a cubic characteristic polynomial") {
  // (n+2) a_{n+3} = (n+1)(a_{n+1} + a_n): chi = x^3 - x - 1 is irreducible.
  auto rec = parse_recurrence(R"({"coeffs": [[-1,-1],[-1,-1],[0],[2,1]]})");
  auto sols = formal_solutions(rec, 4, kPrec);
  REQUIRE(sols.size() == 3);
  Polynomial chi({Rational(-1), Rational(-1), Rational(0), Rational(1)});
  for (const auto& s : sols) {
    CHECK_FALSE(s.exact.has_value());
    CHECK(chi(s.lambda).abs() < ldexp(BigFloat(1.0, kPrec), -200));
    CHECK(residual_slope(rec, s) <= -4.5);
  }
}

TEST_CASE("residual_check examples") {
  std::vector<unsigned long> grid = {50, 100, 200};
  for (const auto& s : formal_solutions(two_three(), 4, kPrec))
    for (const auto& r : residual_check(two_three(), s, grid, kPrec)) CHECK(r < ldexp(BigFloat(1.0, kPrec), -240));

  auto sols = formal_solutions(apery(), 6, kPrec);
  for (const auto& s : sols) {
    auto r = residual_check(apery(), s, grid, kPrec);
    double ratio = (r[2] / r[1]).to_double();
    CHECK(ratio >= std::ldexp(1.0, -7) / 4);
    CHECK(ratio <= std::ldexp(1.0, -7) * 4);
  }

  // K = 0: alpha is still fixed, so the residual is O(n^-2).
  for (const auto& s : formal_solutions(apery(), 0, kPrec)) {
    double slope = residual_slope(apery(), s);
    CHECK(slope == doctest::Approx(-2.0).epsilon(0.05));
    CHECK(slope <= -0.5);
  }
}

TEST_CASE("residuals decay with slope <= -(K + 1/2)") {
  std::vector<Recurrence> recs = {apery(), apery_textbook(), tet6j(),
                                  parse_recurrence(R"({"coeffs": [[2,1,1],[-3,-5,-3],[0,4,1]]})")};
  for (std::size_t K : {2u, 6u}) {
    for (const auto& rec : recs) {
      for (const auto& s : formal_solutions(rec, K, kPrec)) {
        INFO("K = ", K, " lambda = ", s.lambda.real().str(10));
        CHECK(residual_slope(rec, s) <= -(static_cast<double>(K) + 0.5));
      }
    }
  }
}

TEST_CASE("solutions_to_expansion keeps the dominant growth rates") {
  auto e23 = std::get<ExactExpansion>(solutions_to_expansion(formal_solutions(two_three(), 3, kPrec), kPrec));
  REQUIRE(e23.lambdas.size() == 1);
  CHECK(e23.lambdas[0] == NFE(Rational(3)));

  auto e6j = std::get<ExactExpansion>(solutions_to_expansion(formal_solutions(tet6j(), 6, kPrec), kPrec));
  CHECK(e6j.lambdas.size() == 2);
  CHECK(e6j.terms[0].alpha == Rational(3, 2));
  CHECK(e6j.S == std::vector<Rational>{Rational(3, 2)});
  CHECK_NOTHROW(expansion_validate(e6j));
  CHECK(e6j.r_hint == doctest::Approx(1.0));

  // Constant coefficients with irreducible cubic chi: numeric, alpha = 0.
  auto cubic = parse_recurrence(R"({"coeffs": [[-1],[-1],[0],[1]]})");
  auto numeric = solutions_to_expansion(formal_solutions(cubic, 3, kPrec), kPrec);
  REQUIRE(std::holds_alternative<NumericExpansion>(numeric));
  CHECK(std::get<NumericExpansion>(numeric).lambdas.size() == 1);

  // Irrational alpha cannot be placed in Omega.
  auto irrational = parse_recurrence(R"({"coeffs": [[-1,-1],[-1,-1],[0],[2,1]]})");
  CHECK_THROWS_AS(solutions_to_expansion(formal_solutions(irrational, 3, kPrec), kPrec), UserError);
}
