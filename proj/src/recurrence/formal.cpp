#include "nilsson/recurrence/formal.hpp"

#include <algorithm>
#include <functional>

#include "nilsson/error.hpp"
#include "nilsson/exactnum/roots.hpp"

namespace nilsson {

namespace {

// Birkhoff ansatz over a field T. Substituting a_n = lambda^n n^alpha
// sum_k c_k n^-k, dividing by lambda^n n^(alpha+D) and writing x = 1/n gives
//   sum_k c_k x^k sum_i lambda^i P_i(x) (1 + i x)^(alpha - k) = 0,
// with P_i(x) = sum_s [n^(D-s)] p_i x^s. Order x^1 fixes alpha; order
// x^(k+1) fixes c_k with pivot -k lambda chi'(lambda).
template <class T>
void solve_branch(const Recurrence& rec, const T& lambda, std::size_t K, const std::function<T(const Rational&)>& lift,
                  T& alpha, std::vector<T>& c) {
  const std::size_t L = rec.order();
  const long D = rec.degree();
  auto p = [&](std::size_t i, long j) { return j < 0 ? Rational(0) : rec.coeffs[i][static_cast<std::size_t>(j)]; };

  std::vector<T> lpow{lift(Rational(1))};
  for (std::size_t i = 1; i <= L; ++i) lpow.push_back(lpow.back() * lambda);

  T pivot = lift(Rational(0));  // lambda chi'(lambda)
  T sub = lift(Rational(0));    // sum_i lambda^i [n^(D-1)] p_i
  for (std::size_t i = 0; i <= L; ++i) {
    pivot += lpow[i] * lift(p(i, D) * Rational(static_cast<long>(i)));
    sub += lpow[i] * lift(p(i, D - 1));
  }
  if (pivot == lift(Rational(0))) throw UnsupportedError("characteristic root is not simple");
  alpha = -(sub / pivot);

  // binom[j][t] = binomial(alpha - j, t)
  std::vector<std::vector<T>> binom(K + 1);
  for (std::size_t j = 0; j <= K; ++j) {
    binom[j].push_back(lift(Rational(1)));
    T top = alpha - lift(Rational(static_cast<long>(j)));
    for (std::size_t t = 1; t <= K + 1; ++t)
      binom[j].push_back(binom[j][t - 1] * (top - lift(Rational(static_cast<long>(t - 1)))) *
                         lift(Rational(1, static_cast<long>(t))));
  }
  // A(j, m) = [x^m] sum_i lambda^i P_i(x) (1 + i x)^(alpha - j)
  auto A = [&](std::size_t j, std::size_t m) {
    T acc = lift(Rational(0));
    for (std::size_t i = 0; i <= L; ++i) {
      T inner = lift(Rational(0));
      for (std::size_t s = 0; s <= m && static_cast<long>(s) <= D; ++s) {
        Rational coeff = p(i, D - static_cast<long>(s));
        if (coeff.is_zero()) continue;
        inner += binom[j][m - s] * lift(coeff * Rational(static_cast<long>(i)).pow(static_cast<long>(m - s)));
      }
      acc += lpow[i] * inner;
    }
    return acc;
  };

  c.assign(1, lift(Rational(1)));
  for (std::size_t k = 1; k <= K; ++k) {
    T acc = lift(Rational(0));
    for (std::size_t j = 0; j < k; ++j) acc += c[j] * A(j, k + 1 - j);
    c.push_back(acc / (pivot * lift(Rational(static_cast<long>(k)))));
  }
}

// |N| = s^2 * m with m squarefree (sign kept in m). Trial division; gives up
// on the square part beyond a cap (still a valid, non-canonical field).
std::pair<Integer, Integer> squarefree_split(const Integer& N) {
  Integer m = N, s = 1;
  Integer d = 2;
  for (long steps = 0; d * d <= abs(m) && steps < 2000000; ++steps) {
    while (m % (d * d) == 0) {
      m /= d * d;
      s *= d;
    }
    d += (d == 2) ? 1 : 2;
  }
  return {s, m};
}

FormalSolution numeric_view(const ExactFormalData& ex, long precision_bits) {
  Embedding e(ex.context.field, ex.context.root, precision_bits);
  FormalSolution sol;
  sol.lambda = e(ex.lambda);
  sol.alpha = e(ex.alpha);
  std::vector<BigComplex> g;
  for (const auto& c : ex.g.coefficients()) g.push_back(e(c));
  sol.g = TruncatedSeries<BigComplex>(std::move(g), true);
  if (ex.alpha.is_rational()) sol.alpha_rational = ex.alpha.to_rational();
  sol.exact = ex;
  return sol;
}

FormalSolution exact_solution(const Recurrence& rec, const FieldPtr& field, const NumberFieldElement& lambda,
                              std::size_t K, long precision_bits) {
  ExactFormalData ex;
  ex.context = {field, field->default_root()};
  ex.lambda = lambda;
  std::vector<NumberFieldElement> c;
  solve_branch<NumberFieldElement>(
      rec, lambda, K, [&](const Rational& q) { return NumberFieldElement(field, q); }, ex.alpha, c);
  ex.g = TruncatedSeries<NumberFieldElement>(std::move(c), true);
  return numeric_view(ex, precision_bits);
}

FormalSolution conjugate_solution(const FormalSolution& s, long precision_bits) {
  ExactFormalData ex = *s.exact;
  ex.lambda = ex.lambda.conjugate();
  ex.alpha = ex.alpha.conjugate();
  std::vector<NumberFieldElement> c;
  for (const auto& x : ex.g.coefficients()) c.push_back(x.conjugate());
  ex.g = TruncatedSeries<NumberFieldElement>(std::move(c), true);
  return numeric_view(ex, precision_bits);
}

// Rational recognition for numerically computed exponents: continued
// fraction of the real part with denominators up to 10^4, accepted when it
// matches to half the working precision and the imaginary part vanishes.
std::optional<Rational> recognize_rational(const BigComplex& z, long precision_bits) {
  BigFloat tol = ldexp(max(BigFloat(1.0, precision_bits), z.abs()), -(precision_bits / 2));
  if (abs(z.imag()) > tol) return std::nullopt;
  BigFloat x = z.real();
  Integer h0 = 0, h1 = 1, k0 = 1, k1 = 0;  // convergents h/k
  for (int step = 0; step < 64; ++step) {
    Integer a;
    BigFloat fl = floor(x);
    mpfr_get_z(a.get_mpz_t(), fl.get(), MPFR_RNDN);
    Integer h2 = a * h1 + h0, k2 = a * k1 + k0;
    if (k2 > 10000) break;
    h0 = h1, h1 = h2, k0 = k1, k1 = k2;
    Rational cand(h1, k1);
    if (abs(BigFloat(cand, precision_bits) - z.real()) <= tol) return cand;
    BigFloat frac = x - fl;
    if (frac.is_zero()) break;
    x = BigFloat(1.0, precision_bits) / frac;
  }
  return std::nullopt;
}

BigComplex complex_exp(const BigComplex& z) {
  BigFloat m = exp(z.real());
  return {m * cos(z.imag()), m * sin(z.imag())};
}

}  // namespace

std::vector<FormalSolution> formal_solutions(const Recurrence& rec, std::size_t K, long precision_bits) {
  recurrence_validate(rec);
  if (precision_bits < kMinPrecision) throw UserError("precision must be at least 53 bits");
  Polynomial chi = characteristic_polynomial(rec);
  if (chi[0].is_zero())
    throw UnsupportedError("characteristic polynomial " + chi.str() +
                           " has a zero root (deg p_0 < D): unsupported regime");
  if (static_cast<std::size_t>(chi.degree()) < rec.order())
    throw UnsupportedError("deg chi < order (deg p_L < D): nonzero Newton-polygon slope; "
                           "ramified/exponential-subdominant regime unsupported");
  if (gcd(chi, chi.derivative()).degree() > 0)
    throw UnsupportedError("characteristic polynomial " + chi.str() +
                           " has a repeated root: log terms required — unsupported in this version");

  const long wp = precision_bits + 64;
  auto roots = poly_roots(chi, wp);
  std::vector<FormalSolution> out;

  // Split off rational roots exactly.
  Polynomial rest = chi;
  Integer lead_den = 1;
  {
    // Clear denominators so candidate p/q has q | leading coefficient.
    Integer l = 1;
    for (const auto& c : chi.coefficients()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.den().get_mpz_t());
    lead_den = (chi.leading() * Rational(l)).num();
    lead_den = abs(lead_den);
  }
  std::vector<BigComplex> numeric_roots;
  for (const auto& z : roots) {
    bool found = false;
    BigFloat scale = max(BigFloat(1.0, wp), z.abs());
    if (abs(z.imag()) <= ldexp(scale, -(wp / 2))) {
      BigFloat t = z.real() * BigFloat(lead_den, wp);
      Integer rounded(static_cast<long>(0));
      mpfr_get_z(rounded.get_mpz_t(), t.get(), MPFR_RNDN);
      Rational cand(rounded, lead_den);
      if (chi(cand).is_zero()) {
        out.push_back(exact_solution(rec, NumberField::rationals(), NumberFieldElement(cand), K, precision_bits));
        rest = rest.divmod(Polynomial({-cand, Rational(1)})).first;
        found = true;
      }
    }
    if (!found) numeric_roots.push_back(z);
  }

  if (rest.degree() == 2) {
    const Rational a = rest[2], b = rest[1], c = rest[0];
    Rational disc = b * b - Rational(4) * a * c;
    // disc = P/Q = (P Q) / Q^2
    Integer N = disc.num() * disc.den();
    auto [s, m] = squarefree_split(N);
    FieldPtr field = NumberField::quadratic(m);
    NumberFieldElement theta = NumberFieldElement::theta(field);
    NumberFieldElement lambda = (NumberFieldElement(field, -b) - theta * Rational(s, disc.den())) / (Rational(2) * a);
    FormalSolution first = exact_solution(rec, field, lambda, K, precision_bits);
    out.push_back(conjugate_solution(first, precision_bits));
    out.push_back(std::move(first));
  } else {
    for (const auto& z : numeric_roots) {
      FormalSolution sol;
      BigComplex alpha;
      std::vector<BigComplex> c;
      solve_branch<BigComplex>(rec, z, K, [&](const Rational& q) { return BigComplex(q, wp); }, alpha, c);
      sol.lambda = z.with_precision(precision_bits);
      sol.alpha = alpha.with_precision(precision_bits);
      sol.alpha_rational = recognize_rational(alpha, precision_bits);
      std::vector<BigComplex> g;
      for (auto& x : c) g.push_back(x.with_precision(precision_bits));
      sol.g = TruncatedSeries<BigComplex>(std::move(g), true);
      out.push_back(std::move(sol));
    }
  }
  std::sort(out.begin(), out.end(),
            [&](const auto& x, const auto& y) { return root_order_less(x.lambda, y.lambda, precision_bits); });
  return out;
}

std::vector<BigFloat> residual_check(const Recurrence& rec, const FormalSolution& sol,
                                     const std::vector<unsigned long>& n_grid, long precision_bits) {
  const long wp = precision_bits + kGuardBits;
  const std::size_t L = rec.order();
  const long D = rec.degree();
  BigComplex lambda = sol.lambda.with_precision(wp);
  BigComplex alpha = sol.alpha.with_precision(wp);
  std::vector<BigFloat> out;
  for (unsigned long n : n_grid) {
    if (n < 2) throw UserError("residual_check needs n >= 2");
    Rational nn(static_cast<long>(n));
    BigComplex total(wp);
    BigComplex lpow(BigFloat(1.0, wp));
    for (std::size_t i = 0; i <= L; ++i) {
      if (i > 0) lpow *= lambda;
      Rational pin = rec.coeffs[i](nn) / nn.pow(D);
      if (pin.is_zero()) continue;
      BigFloat m(Integer(n + i), wp);
      BigFloat x = BigFloat(1.0, wp) / m;
      BigComplex g(wp);
      for (auto it = sol.g.coefficients().rbegin(); it != sol.g.coefficients().rend(); ++it)
        g = x * g + it->with_precision(wp);
      BigComplex shift = complex_exp(log(m / BigFloat(Integer(n), wp)) * alpha);
      total += BigFloat(pin, wp) * (lpow * shift * g);
    }
    out.push_back(total.abs().with_precision(precision_bits));
  }
  return out;
}

AnyExpansion solutions_to_expansion(const std::vector<FormalSolution>& sols, long precision_bits) {
  if (sols.empty()) throw UserError("no formal solutions to assemble");
  BigFloat rmax(precision_bits);
  for (const auto& s : sols) rmax = max(rmax, s.lambda.abs());
  std::vector<const FormalSolution*> dom;
  for (const auto& s : sols)
    if (abs(s.lambda.abs() - rmax) <= ldexp(rmax, -(precision_bits / 2))) dom.push_back(&s);
  for (const auto* s : dom)
    if (!s->alpha_rational)
      throw UserError("exponent alpha is not rational: not Nilsson-representable under Def. 1.1 (alpha = " +
                      s->alpha.real().str(20) + " + " + s->alpha.imag().str(20) + "i)");

  // Common exact field, if any.
  FieldPtr field = NumberField::rationals();
  std::size_t root = 0;
  bool exact = true;
  for (const auto* s : dom) {
    if (!s->exact) {
      exact = false;
      break;
    }
    const auto& f = s->exact->context.field;
    if (f->is_rationals()) continue;
    if (field->is_rationals()) {
      field = f;
      root = s->exact->context.root;
    } else if (!(*field == *f)) {
      exact = false;
    }
  }

  auto fill = [&](auto& e, auto scalar_of) {
    for (std::size_t i = 0; i < dom.size(); ++i) {
      e.lambdas.push_back(scalar_of(*dom[i], -1));
      std::vector<std::decay_t<decltype(e.lambdas[0])>> g;
      for (std::size_t k = 0; k <= dom[i]->g.order(); ++k) g.push_back(scalar_of(*dom[i], static_cast<long>(k)));
      auto one = ScalarTraits<std::decay_t<decltype(e.lambdas[0])>>::one(e.context, e.lambdas[0]);
      e.terms.push_back({i, -*dom[i]->alpha_rational, 0, one, TruncatedSeries(std::move(g), true)});
    }
    std::tie(e.S, e.d) = implied_omega(e);
    e.r_hint = rmax.to_double();
  };

  if (exact) {
    ExactExpansion e;
    e.context = {field, field->is_rationals() ? 0 : root};
    fill(e, [&](const FormalSolution& s, long k) {
      const auto& v = k < 0 ? s.exact->lambda : s.exact->g[static_cast<std::size_t>(k)];
      return v.lifted_to(field);
    });
    return e;
  }
  NumericExpansion e;
  fill(e, [&](const FormalSolution& s, long k) { return k < 0 ? s.lambda : s.g[static_cast<std::size_t>(k)]; });
  return e;
}

}  // namespace nilsson
