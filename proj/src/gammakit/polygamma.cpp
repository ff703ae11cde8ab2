#include "nilsson/gammakit/polygamma.hpp"

#include <cctype>
#include <cmath>
#include <vector>

#include "nilsson/error.hpp"
#include "nilsson/gammakit/gamma_series.hpp"

namespace nilsson {

namespace {

// Asymptotic series of psi^(k)(y) for large y.
BigFloat polygamma_asymptotic(unsigned k, const BigFloat& y, long wp) {
  auto bern = bernoulli_numbers(static_cast<std::size_t>(wp) + 2);
  BigFloat sum(wp);
  if (k == 0) {
    sum = log(y) - BigFloat(Rational(1, 2), wp) / y;
  } else {
    sum = BigFloat(Rational(factorial(k - 1)), wp) / pow(y, static_cast<long>(k)) +
          BigFloat(Rational(factorial(k), Integer(2)), wp) / pow(y, static_cast<long>(k) + 1);
  }
  BigFloat previous(wp);
  for (std::size_t j = 1; 2 * j < bern.size(); ++j) {
    // B_2j (2j+k-1)! / ((2j)! y^(2j+k)); for k = 0 this is B_2j / (2j y^2j).
    Rational c = bern[2 * j] * Rational(factorial(2 * j + k - 1), factorial(2 * j));
    BigFloat term = BigFloat(c, wp) / pow(y, static_cast<long>(2 * j + k));
    if (k == 0) sum -= term;
    else sum += term;
    BigFloat size = abs(term);
    if (size <= ldexp(abs(sum), -wp)) return k % 2 == 1 || k == 0 ? sum : -sum;
    if (j > 1 && size > previous) break;  // the divergent tail has begun
    previous = size;
  }
  throw NumericalError("polygamma asymptotic series did not reach the requested precision");
}

}  // namespace

BigFloat polygamma(unsigned k, const Rational& x, long precision_bits) {
  if (x <= Rational(0)) throw UserError("polygamma needs a positive argument, got " + x.str());
  const long wp = precision_bits + kGuardBits + 32 + 4 * static_cast<long>(k);
  // Shift until y >= wp/4 so that the asymptotic series resolves 2^-wp.
  const Rational target(std::max<long>(wp / 4, static_cast<long>(k) + 8));
  long shift = 0;
  if (x < target) {
    Rational gap = target - x;
    shift = static_cast<long>(std::ceil(gap.to_double()));
  }
  // psi^(k)(x) = psi^(k)(x+N) - (-1)^k k! sum_{j<N} (x+j)^-(k+1)
  Rational direct(0);
  for (long j = 0; j < shift; ++j) direct += (x + Rational(j)).pow(-static_cast<long>(k) - 1);
  direct *= Rational(factorial(k));
  if (k % 2 == 1) direct = -direct;
  BigFloat y(x + Rational(shift), wp);
  BigFloat result = polygamma_asymptotic(k, y, wp) - BigFloat(direct, wp);
  return result.with_precision(precision_bits);
}

BigFloat log_gamma(const Rational& x, long precision_bits) {
  if (x <= Rational(0)) throw UserError("log_gamma needs a positive argument, got " + x.str());
  const long wp = precision_bits + kGuardBits + 16;
  BigFloat arg(x, wp);
  BigFloat out(wp);
  int sign = 0;
  mpfr_lgamma(out.get(), &sign, arg.get(), MPFR_RNDN);
  return out.with_precision(precision_bits);
}

// ---------------------------------------------------------------------------
// PolygammaPolynomial

PolygammaPolynomial PolygammaPolynomial::constant(const Rational& c) {
  PolygammaPolynomial p;
  p.add(Monomial{}, c);
  return p;
}

PolygammaPolynomial PolygammaPolynomial::symbol(bool at_gamma, unsigned order) {
  if (order > kMaxPolygammaBeta) throw UserError("polygamma order exceeds the supported maximum");
  Monomial m{};
  m[2 * order + (at_gamma ? 0 : 1)] = 1;
  PolygammaPolynomial p;
  p.add(m, Rational(1));
  return p;
}

void PolygammaPolynomial::add(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int PolygammaPolynomial::max_order() const {
  int out = -1;
  for (const auto& [m, c] : terms_)
    for (std::size_t i = 0; i < kSymbols; ++i)
      if (m[i] != 0) out = std::max(out, static_cast<int>(i / 2));
  return out;
}

PolygammaPolynomial& PolygammaPolynomial::operator+=(const PolygammaPolynomial& o) {
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

PolygammaPolynomial operator-(const PolygammaPolynomial& a, const PolygammaPolynomial& b) {
  PolygammaPolynomial out = a;
  for (const auto& [m, c] : b.terms_) out.add(m, -c);
  return out;
}

PolygammaPolynomial operator*(const PolygammaPolynomial& a, const PolygammaPolynomial& b) {
  PolygammaPolynomial out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      PolygammaPolynomial::Monomial m;
      for (std::size_t i = 0; i < PolygammaPolynomial::kSymbols; ++i) m[i] = ma[i] + mb[i];
      out.add(m, ca * cb);
    }
  return out;
}

PolygammaPolynomial PolygammaPolynomial::derivative() const {
  PolygammaPolynomial out;
  for (const auto& [m, c] : terms_)
    for (std::size_t i = 0; i < kSymbols; ++i) {
      if (m[i] == 0) continue;
      if (i + 2 >= kSymbols) throw UserError("polygamma order exceeds the supported maximum");
      Monomial d = m;
      d[i] -= 1;
      d[i + 2] += 1;
      Rational coeff = c * Rational(static_cast<long>(m[i]));
      out.add(d, i % 2 == 1 ? -coeff : coeff);  // d/dgamma psi(n+1-gamma) carries a minus sign
    }
  return out;
}

BigFloat PolygammaPolynomial::evaluate(const Rational& gamma, unsigned long n, long precision_bits) const {
  const long wp = precision_bits + kGuardBits + 16;
  Rational other = Rational(static_cast<long>(n) + 1) - gamma;
  std::vector<BigFloat> values;
  for (int j = 0; j <= max_order(); ++j) {
    values.push_back(polygamma(static_cast<unsigned>(j), gamma, wp));
    values.push_back(polygamma(static_cast<unsigned>(j), other, wp));
  }
  BigFloat sum(wp);
  for (const auto& [m, c] : terms_) {
    BigFloat t(c, wp);
    for (std::size_t i = 0; i < kSymbols; ++i)
      if (m[i] != 0) t *= pow(values[i], static_cast<long>(m[i]));
    sum += t;
  }
  return sum.with_precision(precision_bits);
}

std::string PolygammaPolynomial::latex() const {
  if (terms_.empty()) return "0";
  std::string out;
  // Highest total degree first, then the map order.
  std::vector<std::pair<Monomial, Rational>> sorted(terms_.begin(), terms_.end());
  auto degree = [](const Monomial& m) {
    unsigned d = 0;
    for (unsigned e : m) d += e;
    return d;
  };
  std::stable_sort(sorted.begin(), sorted.end(),
                   [&](const auto& a, const auto& b) { return degree(a.first) > degree(b.first); });
  for (const auto& [m, c] : sorted) {
    Rational a = c.sign() < 0 ? -c : c;
    if (out.empty()) out = c.sign() < 0 ? "-" : "";
    else out += c.sign() < 0 ? " - " : " + ";
    bool has_factor = degree(m) > 0;
    if (!has_factor || a != Rational(1)) {
      if (a.den() == 1) out += a.num().get_str();
      else out += "\\frac{" + a.num().get_str() + "}{" + a.den().get_str() + "}";
      if (has_factor) out += " ";
    }
    bool first = true;
    for (std::size_t i = 0; i < kSymbols; ++i) {
      if (m[i] == 0) continue;
      if (!first) out += " ";
      first = false;
      out += "\\psi";
      if (i / 2 > 0) out += "^{(" + std::to_string(i / 2) + ")}";
      out += i % 2 == 0 ? "(\\gamma)" : "(n+1-\\gamma)";
      if (m[i] > 1) out += "^" + (m[i] < 10 ? std::to_string(m[i]) : "{" + std::to_string(m[i]) + "}");
    }
  }
  return out;
}

namespace {

class LatexParser {
 public:
  explicit LatexParser(const std::string& text) {
    for (std::size_t i = 0; i < text.size(); ++i)
      if (!std::isspace(static_cast<unsigned char>(text[i]))) {
        s_ += text[i];
        pos_.push_back(i + 1);
      }
  }

  PolygammaPolynomial parse() {
    if (s_.empty()) fail("empty polynomial");
    PolygammaPolynomial out;
    bool first = true;
    while (i_ < s_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++i_;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      out += term(sign);
    }
    return out;
  }

 private:
  char peek() const { return i_ < s_.size() ? s_[i_] : '\0'; }
  bool accept(const std::string& token) {
    if (s_.compare(i_, token.size(), token) != 0) return false;
    i_ += token.size();
    return true;
  }
  void expect(const std::string& token) {
    if (!accept(token)) fail("expected '" + token + "'");
  }
  [[noreturn]] void fail(const std::string& what) const {
    std::size_t column = i_ < pos_.size() ? pos_[i_] : (pos_.empty() ? 1 : pos_.back() + 1);
    throw ParseError("polygamma polynomial: " + what, 1, column);
  }
  unsigned long number() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a number");
    unsigned long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) v = 10 * v + static_cast<unsigned long>(s_[i_++] - '0');
    return v;
  }
  unsigned long braced_or_digit() {
    if (accept("{")) {
      unsigned long v = number();
      expect("}");
      return v;
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an exponent");
    return static_cast<unsigned long>(s_[i_++] - '0');
  }

  PolygammaPolynomial term(int sign) {
    Rational coeff(sign);
    bool any = false;
    if (accept("\\frac{")) {
      Integer num(static_cast<long>(number()));
      expect("}{");
      Integer den(static_cast<long>(number()));
      expect("}");
      if (den == 0) fail("zero denominator");
      coeff *= Rational(num, den);
      any = true;
    } else if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff *= Rational(Integer(static_cast<long>(number())));
      any = true;
    }
    PolygammaPolynomial out = PolygammaPolynomial::constant(coeff);
    while (accept("\\psi")) {
      any = true;
      unsigned long order = 0;
      if (accept("^{(")) {
        order = number();
        expect(")}");
      }
      if (order > kMaxPolygammaBeta) fail("polygamma order too large");
      bool at_gamma;
      if (accept("(\\gamma)")) at_gamma = true;
      else if (accept("(n+1-\\gamma)")) at_gamma = false;
      else fail("expected (\\gamma) or (n+1-\\gamma)");
      unsigned long power = 1;
      if (accept("^")) power = braced_or_digit();
      auto f = PolygammaPolynomial::symbol(at_gamma, static_cast<unsigned>(order));
      for (unsigned long p = 0; p < power; ++p) out = out * f;
      if (power == 0) fail("zero exponent");
      accept("\\cdot");
    }
    if (!any) fail("expected a coefficient or \\psi factor");
    return out;
  }

  std::string s_;
  std::vector<std::size_t> pos_;
  std::size_t i_ = 0;
};

}  // namespace

PolygammaPolynomial PolygammaPolynomial::parse_latex(const std::string& text) { return LatexParser(text).parse(); }

PolygammaPolynomial p_beta_polynomial(unsigned beta) {
  if (beta > kMaxPolygammaBeta)
    throw UserError("beta = " + std::to_string(beta) + " exceeds the supported maximum " +
                    std::to_string(kMaxPolygammaBeta));
  // p_{b+1} = d/dgamma p_b + p_b * d/dgamma log B(gamma, n+1-gamma)
  const auto dlog = PolygammaPolynomial::symbol(true, 0) - PolygammaPolynomial::symbol(false, 0);
  auto p = PolygammaPolynomial::constant(Rational(1));
  for (unsigned b = 0; b < beta; ++b) p = p.derivative() + dlog * p;
  return p;
}

}  // namespace nilsson
