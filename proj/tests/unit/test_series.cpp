#include <doctest.h>

#include <cmath>
#include <complex>

#include "nilsson/series/expansion_io.hpp"
#include "support/generators.hpp"
#include "support/random_expansion.hpp"
#include "support/tet6j_reference.hpp"

using namespace nilsson;
using nilsson::testing::random_rational;
using nilsson::testing::uniform_int;
using nilsson::testing::random_expansion;
using nilsson::testing::same_terms;
using nilsson::testing::term;

namespace {

constexpr long kPrec = 160;

using NFE = NumberFieldElement;
using cld = std::complex<long double>;

bool close(const BigComplex& a, const BigComplex& b, double rel) {
  return relative_distance(a, b).to_double() <= rel;
}

OmegaIndex random_omega() {
  return {Rational(uniform_int(0, 20), uniform_int(1, 4)), static_cast<unsigned>(uniform_int(0, 3))};
}

ExactExpansion rational_expansion(std::vector<Rational> lambdas) {
  ExactExpansion e;
  for (auto& l : lambdas) e.lambdas.emplace_back(l);
  return e;
}

void check_minimal(const CoefficientMatrix<NFE>& m) {
  // Every lambda column and every Omega row carries a nonzero coefficient.
  for (std::size_t j = 0; j < m.lambdas.size(); ++j) {
    bool any = false;
    for (const auto& row : m.entries) any = any || !row[j].is_zero();
    CHECK(any);
  }
  for (const auto& row : m.entries) {
    bool any = false;
    for (const auto& c : row) any = any || !c.is_zero();
    CHECK(any);
  }
  for (std::size_t i = 1; i < m.rows.size(); ++i) CHECK(m.rows[i - 1] < m.rows[i]);
}

}  // namespace

TEST_CASE("omega_cmp examples") {
  CHECK(omega_cmp({Rational(1), 1}, {Rational(1), 0}) == std::strong_ordering::less);
  CHECK(omega_cmp({Rational(1), 0}, {Rational(3, 2), 1}) == std::strong_ordering::less);
  CHECK(omega_cmp({Rational(2), 3}, {Rational(2), 3}) == std::strong_ordering::equal);
  CHECK(OmegaIndex::parse("3/2,1") == OmegaIndex{Rational(3, 2), 1});
  CHECK(parse_omega_list("3/2,0;5/2,0").size() == 2);
  CHECK_THROWS_AS(OmegaIndex::parse("3/2"), UserError);
  CHECK_THROWS_AS(OmegaIndex::parse("1,-1"), UserError);
}

TEST_CASE("omega_cmp is a total order on random triples") {
  for (int i = 0; i < 10000; ++i) {
    OmegaIndex a = random_omega(), b = random_omega(), c = random_omega();
    auto ab = omega_cmp(a, b), ba = omega_cmp(b, a);
    // Totality and antisymmetry.
    CHECK((ab == std::strong_ordering::less || ab == std::strong_ordering::equal ||
           ab == std::strong_ordering::greater));
    CHECK((ab == 0) == (ba == 0));
    CHECK((ab < 0) == (ba > 0));
    CHECK((ab == 0) == (a == b));
    // Transitivity.
    if (omega_cmp(a, b) <= 0 && omega_cmp(b, c) <= 0) CHECK(omega_cmp(a, c) <= 0);
  }
}

TEST_CASE("monomial_eval examples") {
  CHECK(monomial_eval({Rational(0), 0}, 17, kPrec) == BigFloat(1.0, kPrec));
  long double direct = std::log(7.0L) / std::pow(7.0L, 1.5L);
  CHECK(monomial_eval({Rational(3, 2), 1}, 7, kPrec).to_double() == doctest::Approx(static_cast<double>(direct)).epsilon(1e-15));
  BigFloat milli = monomial_eval({Rational(1), 0}, 1000, kPrec);
  CHECK(abs(milli - BigFloat(Rational(1, 1000), kPrec)) <= ldexp(BigFloat(1.0, kPrec), -kPrec));
  CHECK_THROWS_AS(monomial_eval({Rational(1), 0}, 1, kPrec), UserError);
}

TEST_CASE("monomial ratios decay along the Omega order") {
  // Pairs drawn from one residue class S = {s} (so alpha' - alpha is a
  // natural number), alpha <= 5, beta <= 3.
  const std::vector<unsigned long> grid = {100, 10000, 1000000};
  for (int i = 0; i < 1000; ++i) {
    Rational s(uniform_int(0, 5), uniform_int(1, 6));
    OmegaIndex a{s + Rational(uniform_int(0, 4)), static_cast<unsigned>(uniform_int(0, 3))};
    OmegaIndex b{s + Rational(uniform_int(0, 4)), static_cast<unsigned>(uniform_int(0, 3))};
    if (a == b) continue;
    if (b < a) std::swap(a, b);
    std::vector<BigFloat> ratios;
    for (auto n : grid) ratios.push_back(monomial_eval(b, n, 128) / monomial_eval(a, n, 128));
    INFO("omega ", a.str(), " < ", b.str());
    CHECK(ratios[1] < ratios[0]);
    CHECK(ratios[2] < ratios[1]);
    CHECK(ratios[2] < BigFloat(1.0, 128));
  }
}

TEST_CASE("in_omega membership") {
  std::vector<Rational> s = {Rational(1), Rational(3, 2)};
  CHECK(in_omega({Rational(5, 2), 1}, s, 1));
  CHECK(in_omega({Rational(1), 0}, s, 1));
  CHECK_FALSE(in_omega({Rational(1, 2), 0}, s, 1));
  CHECK_FALSE(in_omega({Rational(2), 2}, s, 1));
  CHECK_FALSE(in_omega({Rational(4, 3), 0}, s, 1));
}

TEST_CASE("truncated series arithmetic") {
  TruncatedSeries<Rational> a({Rational(1), Rational(2), Rational(3)}, true);
  TruncatedSeries<Rational> b({Rational(1), Rational(-1)});
  auto p = a * b;
  CHECK(p.order() == 1);
  CHECK(p[0] == Rational(1));
  CHECK(p[1] == Rational(1));
  CHECK((a + a)[2] == Rational(6));
  CHECK(a.truncated(1).order() == 1);
  CHECK(a.truncated(1).normalized());
  CHECK_THROWS_AS(a.truncated(5), UserError);
  CHECK_THROWS_AS(TruncatedSeries<Rational>(std::vector<Rational>{}), UserError);
}

TEST_CASE("expansion_minimize examples") {
  SUBCASE("zero lambda column is dropped") {
    auto e = rational_expansion({Rational(1), Rational(2)});
    e.terms.push_back(term(0, Rational(0), 0, NFE(Rational(0)), {NFE(Rational(1)), NFE(Rational(4))}));
    e.terms.push_back(term(1, Rational(0), 0, NFE(Rational(5)), {NFE(Rational(1)), NFE(Rational(2))}));
    auto before = matrix_prune(expansion_flatten(e));
    auto m = expansion_minimize(e);
    REQUIRE(m.lambdas.size() == 1);
    CHECK(m.lambdas[0] == NFE(Rational(2)));
    auto after = expansion_flatten(m);
    CHECK(after.rows == before.rows);
    CHECK(after.rows == std::vector<OmegaIndex>{{Rational(0), 0}, {Rational(1), 0}});
  }
  SUBCASE("already minimal input is unchanged") {
    auto e = rational_expansion({Rational(1)});
    e.terms.push_back(term(0, Rational(0), 0, NFE(Rational(7)), {NFE(Rational(1)), NFE(Rational(-1, 3))}));
    std::tie(e.S, e.d) = implied_omega(e);
    CHECK(same_terms(expansion_minimize(e), e));
  }
  SUBCASE("zero rows are dropped only when zero for every lambda") {
    auto e = rational_expansion({Rational(1), Rational(-1)});
    // lambda = 1:  c(0,0) = 1, c(1,0) = 0, c(2,0) = 3
    // lambda = -1: c(0,0) = 0, c(1,0) = 2, c(2,0) = 0
    // plus an explicitly stored all-zero row at (3,0).
    e.terms.push_back(term(0, Rational(0), 0, NFE(Rational(1)),
                           {NFE(Rational(1)), NFE(Rational(0)), NFE(Rational(3)), NFE(Rational(0))}));
    e.terms.push_back(term(1, Rational(1), 0, NFE(Rational(2)), {NFE(Rational(1)), NFE(Rational(0))}));
    auto full = expansion_flatten(e);
    CHECK(full.rows.size() == 4);
    auto m = matrix_prune(expansion_flatten(expansion_minimize(e)));
    check_minimal(m);
    REQUIRE(m.rows.size() == 3);
    CHECK(m.rows[1] == OmegaIndex{Rational(1), 0});  // zero for lambda=1, kept for lambda=-1
    CHECK(m.entries[1][0].is_zero());
    CHECK(m.entries[1][1] == NFE(Rational(2)));
  }
  SUBCASE("entirely zero expansion is rejected") {
    auto e = rational_expansion({Rational(1)});
    e.terms.push_back(term(0, Rational(0), 0, NFE(Rational(0)), {NFE(Rational(1))}));
    CHECK_THROWS_AS(expansion_minimize(e), UserError);
  }
}

TEST_CASE("minimize is idempotent and preserves partial sums") {
  for (int trial = 0; trial < 60; ++trial) {
    auto e = random_expansion();
    auto m = expansion_minimize(e);
    auto mm = expansion_minimize(m);
    CHECK(same_terms(m, mm));
    auto pruned = matrix_prune(expansion_flatten(m));
    check_minimal(pruned);
    // Nothing nonzero was lost and no lambda without data survived.
    CHECK(pruned.lambdas == m.lambdas);
    for (const auto& t : m.terms) {
      CHECK_FALSE(t.stokes.is_zero());
      CHECK_FALSE(t.g.coefficients().back().is_zero());
    }
    CHECK(expansion_canonical_equal(e, m, 0.0));

    auto ne = expansion_to_numeric(e, kPrec);
    auto nm = expansion_to_numeric(m, kPrec);
    for (const char* cut : {"0,0", "1/2,1", "1,0", "3/2,0", "7/2,0", "9/2,0"}) {
      OmegaIndex w = OmegaIndex::parse(cut);
      for (unsigned long n : {2ul, 17ul, 300ul}) {
        BigComplex x = expansion_partial_sum_scaled(ne, w, n, kPrec);
        BigComplex y = expansion_partial_sum_scaled(nm, w, n, kPrec);
        BigFloat scale = max(BigFloat(1.0, kPrec), x.abs());
        INFO("trial ", trial, " cut ", cut, " n ", n);
        CHECK((x - y).abs() <= ldexp(scale, -(kPrec - 16)));
      }
    }
  }
}

TEST_CASE("flatten round trip is the identity on minimal inputs") {
  for (int trial = 0; trial < 60; ++trial) {
    auto m = expansion_minimize(random_expansion());
    auto back = expansion_unflatten(expansion_flatten(m), m.d, m.S);
    CHECK(same_terms(back, m));
  }
}

TEST_CASE("overlapping terms are summed when flattened") {
  auto e = rational_expansion({Rational(1)});
  e.terms.push_back(term(0, Rational(0), 0, NFE(Rational(2)), {NFE(Rational(1)), NFE(Rational(5))}));
  e.terms.push_back(term(0, Rational(1), 0, NFE(Rational(3)), {NFE(Rational(1))}));
  auto m = expansion_flatten(e);
  REQUIRE(m.rows.size() == 2);
  CHECK(m.entries[1][0] == NFE(Rational(13)));
}

TEST_CASE("expansion_partial_sum examples") {
  auto constant = rational_expansion({Rational(1)});
  constant.terms.push_back(term(0, Rational(0), 0, NFE(Rational(5)), {NFE(Rational(1))}));
  for (unsigned long n : {2ul, 10ul, 1000ul})
    CHECK(close(expansion_partial_sum(constant, {Rational(0), 0}, n, kPrec), BigComplex(Rational(5), kPrec), 1e-40));

  auto two_three = rational_expansion({Rational(2), Rational(3)});
  two_three.terms.push_back(term(0, Rational(0), 0, NFE(Rational(1)), {NFE(Rational(1))}));
  two_three.terms.push_back(term(1, Rational(0), 0, NFE(Rational(1)), {NFE(Rational(1))}));
  CHECK(close(expansion_partial_sum(two_three, {Rational(0), 0}, 5, kPrec), BigComplex(Rational(275), kPrec), 1e-40));

  CHECK_THROWS_AS(expansion_partial_sum(constant, {Rational(1, 2), 0}, 5, kPrec), UserError);
  CHECK_THROWS_AS(expansion_partial_sum(constant, {Rational(0), 0}, 1, kPrec), UserError);
}

TEST_CASE("6j partial sums match term-by-term evaluation") {
  auto k = nilsson::testing::tet6j_field();
  auto g = nilsson::testing::tet6j_g_plus(k);
  NFE lp = nilsson::testing::tet6j_lambda_plus(k);
  ExactExpansion e;
  e.context = {k, nilsson::testing::tet6j_root()};
  e.lambdas = {lp, lp.conjugate()};
  std::vector<NFE> gm;
  for (const auto& c : g) gm.push_back(c.conjugate());
  e.terms.push_back(term(0, Rational(3, 2), 0, NFE(k, Rational(1)), g));
  e.terms.push_back(term(1, Rational(3, 2), 0, NFE(k, Rational(1)), gm));
  expansion_validate(e);

  // Independent oracle: lambda = exp(-+ 6 i arccos(1/3)) and the coefficients
  // as long-double complex numbers.
  const long double s2 = std::sqrt(2.0L);
  const long double phi = 6 * std::acos(1.0L / 3);
  cld lam(std::cos(phi), -std::sin(phi));
  std::vector<cld> c = {{1, 0},
                        {-432.0L / 576, 31 * s2 / 576},
                        {109847.0L / 331776, -22320 * s2 / 331776},
                        {-18649008.0L / 573308928, 4914305 * s2 / 573308928}};
  const unsigned long n = 100;
  auto oracle = [&](std::size_t terms) {
    cld sum = 0;
    for (std::size_t j = 0; j < terms; ++j) sum += c[j] * std::pow(static_cast<long double>(n), -1.5L - j);
    return 2 * (std::pow(lam, static_cast<long double>(n)) * sum).real();
  };

  BigComplex lead = expansion_partial_sum(e, {Rational(3, 2), 0}, n, kPrec);
  CHECK(std::abs(lead.imag().to_double()) < 1e-40);
  CHECK(lead.real().to_double() == doctest::Approx(static_cast<double>(oracle(1))).epsilon(1e-13));
  BigComplex three = expansion_partial_sum(e, {Rational(7, 2), 0}, n, kPrec);
  CHECK(three.real().to_double() == doctest::Approx(static_cast<double>(oracle(3))).epsilon(1e-13));
  BigComplex four = expansion_partial_sum(e, {Rational(9, 2), 0}, n, kPrec);
  CHECK(four.real().to_double() == doctest::Approx(static_cast<double>(oracle(4))).epsilon(1e-13));
}

TEST_CASE("expansion_canonical_equal examples") {
  auto k = nilsson::testing::tet6j_field();
  auto g = nilsson::testing::tet6j_g_plus(k);
  NFE lp = nilsson::testing::tet6j_lambda_plus(k);
  ExactExpansion e;
  e.context = {k, nilsson::testing::tet6j_root()};
  e.lambdas = {lp, lp.conjugate()};
  std::vector<NFE> gm;
  for (const auto& c : g) gm.push_back(c.conjugate());
  e.terms.push_back(term(0, Rational(3, 2), 0, NFE(k, Rational(1)), g));
  e.terms.push_back(term(1, Rational(3, 2), 0, NFE(k, Rational(1)), gm));
  std::tie(e.S, e.d) = implied_omega(e);

  SUBCASE("zero padding does not matter") {
    auto padded = e;
    auto gp = g;
    gp.push_back(NFE(k, Rational(0)));
    gp.push_back(NFE(k, Rational(0)));
    padded.terms[0] = term(0, Rational(3, 2), 0, NFE(k, Rational(1)), gp);
    padded.terms.push_back(term(1, Rational(3, 2), 0, NFE(k, Rational(0)), {NFE(k, Rational(1))}));
    CHECK(expansion_canonical_equal(e, expansion_minimize(padded), 0.0));
    // Lambda order is irrelevant.
    auto swapped = e;
    std::swap(swapped.lambdas[0], swapped.lambdas[1]);
    for (auto& t : swapped.terms) t.lambda_index = 1 - t.lambda_index;
    CHECK(expansion_canonical_equal(e, swapped, 0.0));
  }
  SUBCASE("one perturbed coefficient breaks equality") {
    auto bad = e;
    auto gp = g;
    gp[3] = gp[3] + NFE(k, Rational(1, 1000000));
    bad.terms[0] = term(0, Rational(3, 2), 0, NFE(k, Rational(1)), gp);
    CHECK_FALSE(expansion_canonical_equal(e, bad, 0.0));
    // Swapping only the coefficient data (not the lambdas) is inconsistent.
    auto mixed = e;
    mixed.terms[0].g = TruncatedSeries<NFE>(gm, true);
    CHECK_FALSE(expansion_canonical_equal(e, mixed, 0.0));
  }
  SUBCASE("numeric tolerance boundary") {
    const double tol = 1e-12;
    auto ne = expansion_to_numeric(e, kPrec);
    auto scaled = ne;
    scaled.terms[0].stokes = BigFloat(1 + 2 * tol, kPrec) * scaled.terms[0].stokes;
    CHECK_FALSE(expansion_canonical_equal(ne, scaled, tol));
    auto nudged = ne;
    nudged.terms[0].stokes = BigFloat(1 + tol / 4, kPrec) * nudged.terms[0].stokes;
    CHECK(expansion_canonical_equal(ne, nudged, tol));
  }
}

TEST_CASE("expansion validation") {
  auto e = rational_expansion({Rational(2), Rational(3)});
  e.terms.push_back(term(0, Rational(0), 0, NFE(Rational(1)), {NFE(Rational(1))}));
  CHECK_THROWS_AS(expansion_validate(e), UserError);  // unequal moduli
  auto ok = rational_expansion({Rational(2), Rational(-2)});
  ok.terms.push_back(term(1, Rational(1, 2), 0, NFE(Rational(1)), {NFE(Rational(1))}));
  ok.S = {Rational(1, 2)};
  CHECK_NOTHROW(expansion_validate(ok));
  ok.terms[0].beta = 1;
  CHECK_THROWS_AS(expansion_validate(ok), UserError);  // beta > d
  ok.terms[0].beta = 0;
  ok.terms[0].alpha = Rational(1, 3);
  CHECK_THROWS_AS(expansion_validate(ok), UserError);  // alpha not in S + N
  ok.terms[0].alpha = Rational(1, 2);
  ok.terms[0].lambda_index = 5;
  CHECK_THROWS_AS(expansion_validate(ok), UserError);
}

TEST_CASE("expansion json round trip") {
  auto k = nilsson::testing::tet6j_field();
  auto g = nilsson::testing::tet6j_g_plus(k);
  NFE lp = nilsson::testing::tet6j_lambda_plus(k);
  ExactExpansion e;
  e.context = {k, nilsson::testing::tet6j_root()};
  e.lambdas = {lp, lp.conjugate()};
  e.terms.push_back(term(0, Rational(3, 2), 0, NFE(k, Rational(1)), g));
  e.S = {Rational(3, 2)};
  e.r_hint = 1.0;

  json j = expansion_to_json(e);
  CHECK(j.at("mode") == "exact");
  CHECK(j.at("minpoly") == json::array({2, 0, 1}));
  auto back = std::get<ExactExpansion>(expansion_from_json(j));
  CHECK(same_terms(back, e));
  CHECK(back.context.root == 1);
  CHECK(back.r_hint == 1.0);
  CHECK(expansion_to_json(back) == j);

  auto ne = expansion_to_numeric(e, 200);
  json nj = expansion_to_json(ne);
  auto nback = std::get<NumericExpansion>(expansion_from_json(nj));
  CHECK(expansion_canonical_equal(ne, nback, 1e-50));
  CHECK(nback.lambdas[0].precision() == 200);

  // Mode is inferred when absent; S defaults to the implied base set.
  json bare = json::parse(R"({"lambdas": ["1"], "terms": [{"lambda_index": 0, "alpha": "1/2", "g": ["1", "-1/8"]}]})");
  auto inferred = std::get<ExactExpansion>(expansion_from_json(bare));
  CHECK(inferred.S == std::vector<Rational>{Rational(1, 2)});
  CHECK(inferred.terms[0].g.normalized());

  CHECK_THROWS_AS(expansion_from_json(json::parse(R"({"lambdas": ["1"]})")), UserError);
  CHECK_THROWS_AS(expansion_from_json(json::parse(R"({"lambdas": ["1"], "terms": [{"alpha": "1"}]})")), UserError);
}
