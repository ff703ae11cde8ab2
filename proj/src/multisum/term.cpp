#include "nilsson/multisum/term.hpp"

#include <algorithm>
#include <numeric>

#include "nilsson/error.hpp"

namespace nilsson {

long LinearForm::eval(long n, const std::vector<long>& k) const {
  long v = coeff_n * n + constant;
  for (std::size_t i = 0; i < coeff_k.size(); ++i) v += coeff_k[i] * k[i];
  return v;
}

bool LinearForm::linear_part_zero() const {
  return coeff_n == 0 && std::all_of(coeff_k.begin(), coeff_k.end(), [](long c) { return c == 0; });
}

bool LinearForm::is_zero() const { return constant == 0 && linear_part_zero(); }

std::string LinearForm::str() const {
  std::string out;
  auto add = [&](long c, const std::string& var) {
    if (c == 0) return;
    if (out.empty()) out = c < 0 ? "-" : "";
    else out += c < 0 ? " - " : " + ";
    long a = c < 0 ? -c : c;
    if (a != 1 || var.empty()) out += std::to_string(a);
    out += var;
  };
  add(coeff_n, "n");
  for (std::size_t i = 0; i < coeff_k.size(); ++i) add(coeff_k[i], "k" + std::to_string(i + 1));
  add(constant, "");
  return out.empty() ? "0" : out;
}

std::string BalanceReport::str() const {
  if (balanced) return "balanced";
  if (linear_part_balanced) return "balanced up to the constant " + defect.str() + " (offset forms)";
  return "unbalanced: defect " + defect.str();
}

void term_validate(const BalancedTerm& t) {
  auto check = [&](const LinearForm& f, const char* what) {
    if (f.coeff_k.size() != t.r)
      throw UserError(std::string(what) + " has " + std::to_string(f.coeff_k.size()) + " k-coefficients, expected r = " +
                      std::to_string(t.r));
  };
  if (t.C.size() != t.r) throw UserError("term needs exactly r constants C_i");
  for (const auto& f : t.factors) {
    check(f.form, "factorial form");
    if (f.eps != 1 && f.eps != -1) throw UserError("factorial exponent eps must be +1 or -1");
  }
  if (t.sign_form) check(*t.sign_form, "sign form");
  for (const auto& p : t.prefactors) check(p.form, "prefactor form");
}

BalanceReport check_balanced(const BalancedTerm& t) {
  term_validate(t);
  BalanceReport rep;
  rep.defect.coeff_k.assign(t.r, 0);
  for (const auto& f : t.factors) {
    rep.defect.coeff_n += f.eps * f.form.coeff_n;
    rep.defect.constant += f.eps * f.form.constant;
    for (std::size_t i = 0; i < t.r; ++i) rep.defect.coeff_k[i] += f.eps * f.form.coeff_k[i];
  }
  rep.balanced = rep.defect.is_zero();
  rep.linear_part_balanced = rep.defect.linear_part_zero();
  return rep;
}

namespace {

// a . x + b >= 0
struct Ineq {
  std::vector<long long> a;
  long long b;
};

void normalize(Ineq& q) {
  long long g = 0;
  for (auto c : q.a) g = std::gcd(g, c < 0 ? -c : c);
  if (g > 1) {
    for (auto& c : q.a) c /= g;
    // floor(b / g) keeps the integer solution set unchanged.
    q.b = q.b >= 0 ? q.b / g : -((-q.b + g - 1) / g);
  }
}

long long floor_div(long long p, long long q) {
  long long d = p / q, r = p % q;
  return (r != 0 && ((r < 0) != (q < 0))) ? d - 1 : d;
}

// Bounds of x_0 on the real projection of the system (vars 0..m-1).
// Returns false if the system is infeasible.
bool first_var_bounds(std::vector<Ineq> sys, std::size_t m, long long& lo, long long& hi) {
  for (std::size_t v = m; v-- > 1;) {
    std::vector<Ineq> pos, neg, next;
    for (auto& q : sys) {
      if (q.a[v] > 0) pos.push_back(q);
      else if (q.a[v] < 0) neg.push_back(q);
      else next.push_back(q);
    }
    for (const auto& p : pos) {
      for (const auto& q : neg) {
        Ineq c{std::vector<long long>(m), 0};
        for (std::size_t i = 0; i < m; ++i) c.a[i] = (-q.a[v]) * p.a[i] + p.a[v] * q.a[i];
        c.b = (-q.a[v]) * p.b + p.a[v] * q.b;
        normalize(c);
        next.push_back(std::move(c));
      }
    }
    // Drop exact duplicates to curb growth.
    std::sort(next.begin(), next.end(), [](const Ineq& x, const Ineq& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
    next.erase(std::unique(next.begin(), next.end(), [](const Ineq& x, const Ineq& y) { return x.a == y.a && x.b == y.b; }),
               next.end());
    sys = std::move(next);
  }
  bool has_lo = false, has_hi = false;
  for (const auto& q : sys) {
    if (q.a[0] > 0) {
      long long l = -floor_div(q.b, q.a[0]);  // x >= ceil(-b/a)
      lo = has_lo ? std::max(lo, l) : l;
      has_lo = true;
    } else if (q.a[0] < 0) {
      long long h = floor_div(q.b, -q.a[0]);
      hi = has_hi ? std::min(hi, h) : h;
      has_hi = true;
    } else if (q.b < 0) {
      return false;
    }
  }
  if (!has_lo || !has_hi)
    throw UserError("support is unbounded: the factorial forms do not bound every summation variable "
                    "(the term violates the finiteness requirement)");
  return lo <= hi;
}

void enumerate(const std::vector<Ineq>& sys, std::vector<long>& prefix, std::size_t r, std::size_t cap,
               std::vector<std::vector<long>>& out) {
  std::size_t i = prefix.size();
  if (i == r) {
    out.push_back(prefix);
    if (out.size() > cap)
      throw UserError("support enumeration exceeded the cap of " + std::to_string(cap) + " points");
    return;
  }
  // System over variables i..r-1 with the prefix substituted.
  std::size_t m = r - i;
  std::vector<Ineq> sub;
  for (const auto& q : sys) {
    Ineq s{std::vector<long long>(q.a.begin() + static_cast<std::ptrdiff_t>(i), q.a.end()), q.b};
    for (std::size_t j = 0; j < i; ++j) s.b += q.a[j] * prefix[j];
    sub.push_back(std::move(s));
  }
  long long lo = 0, hi = -1;
  if (!first_var_bounds(sub, m, lo, hi)) return;
  for (long long x = lo; x <= hi; ++x) {
    prefix.push_back(static_cast<long>(x));
    enumerate(sys, prefix, r, cap, out);
    prefix.pop_back();
  }
}

}  // namespace

SupportSet enumerate_support(const BalancedTerm& t, long n, std::size_t point_cap) {
  term_validate(t);
  std::vector<Ineq> sys;
  for (const auto& f : t.factors) {
    Ineq q{std::vector<long long>(f.form.coeff_k.begin(), f.form.coeff_k.end()),
           static_cast<long long>(f.form.coeff_n) * n + f.form.constant};
    sys.push_back(std::move(q));
  }
  SupportSet s{n, {}};
  if (t.r == 0) {
    if (std::all_of(sys.begin(), sys.end(), [](const Ineq& q) { return q.b >= 0; })) s.points.emplace_back();
    return s;
  }
  std::vector<long> prefix;
  enumerate(sys, prefix, t.r, point_cap, s.points);
  return s;
}

namespace {

class FactorialTable {
 public:
  const Integer& operator()(long m) {
    if (m < 0) throw std::logic_error("factorial of a negative form value inside the support");
    while (static_cast<long>(table_.size()) <= m) table_.push_back(table_.back() * static_cast<unsigned long>(table_.size()));
    return table_[static_cast<std::size_t>(m)];
  }

 private:
  std::vector<Integer> table_{Integer(1)};
};

Rational pow_of(const Rational& c, long e) { return c.pow(e); }
NumberFieldElement pow_of(const NumberFieldElement& c, long e) { return c.pow(e); }

bool all_rational(const BalancedTerm& t) {
  return t.C0.is_rational() && std::all_of(t.C.begin(), t.C.end(), [](const auto& c) { return c.is_rational(); });
}

// Sum over the support of the factorial / sign / prefactor part, with the
// geometric constants C_i^{k_i} applied per point (exactly, in the field).
template <class T, class Lift>
T sum_term(const BalancedTerm& t, long n, FactorialTable& fact, const std::vector<T>& C, Lift lift) {
  auto support = enumerate_support(t, n);
  T total = lift(Rational(0));
  // Factorial part of the previous point; consecutive points that differ by
  // +1 in the last variable are updated through the small term ratio
  // instead of recomputing products of huge factorials.
  Rational fpart;
  const std::vector<long>* prev = nullptr;
  for (const auto& k : support.points) {
    bool step = prev != nullptr && t.r > 0 && k.back() == prev->back() + 1 &&
                std::equal(k.begin(), k.end() - 1, prev->begin());
    if (step) {
      Integer sn = 1, sd = 1;
      for (const auto& f : t.factors) {
        long c = f.form.coeff_k.back();
        if (c == 0) continue;
        long v = f.form.eval(n, *prev);
        // (v + c)! / v! as a product of |c| consecutive integers.
        Integer run = 1;
        if (c > 0)
          for (long m = v + 1; m <= v + c; ++m) run *= static_cast<unsigned long>(m);
        else
          for (long m = v + c + 1; m <= v; ++m) run *= static_cast<unsigned long>(m);
        bool up = (c > 0) == (f.eps > 0);
        (up ? sn : sd) *= run;
      }
      fpart *= Rational(sn, sd);
    } else {
      Integer num = 1, den = 1;
      for (const auto& f : t.factors) {
        long v = f.form.eval(n, k);
        (f.eps > 0 ? num : den) *= fact(v);
      }
      fpart = Rational(num, den);
    }
    prev = &k;
    Rational value = fpart;
    for (const auto& p : t.prefactors) {
      Rational base(p.form.eval(n, k));
      if (base.is_zero() && p.exponent < 0)
        throw UserError("prefactor " + p.form.str() + " vanishes with a negative exponent at n = " + std::to_string(n));
      value *= base.pow(p.exponent);
    }
    if (t.sign_form && (t.sign_form->eval(n, k) % 2 != 0)) value = -value;
    T v = lift(value);
    for (std::size_t i = 0; i < t.r; ++i)
      if (k[i] != 0) v = v * pow_of(C[i], k[i]);
    total = total + v;
  }
  return total;
}

}  // namespace

namespace {

NumberFieldElement eval_with(const BalancedTerm& t, long n, FactorialTable& fact) {
  if (n < 0) throw UserError("multisum index n must be nonnegative");
  if (all_rational(t)) {
    std::vector<Rational> C;
    for (const auto& c : t.C) C.push_back(c.to_rational());
    Rational total = sum_term<Rational>(t, n, fact, C, [](const Rational& q) { return q; });
    return NumberFieldElement(t.field, total * t.C0.to_rational().pow(n));
  }
  FieldPtr f = t.field;
  std::vector<NumberFieldElement> C;
  for (const auto& c : t.C) C.push_back(c.lifted_to(f));
  auto total = sum_term<NumberFieldElement>(t, n, fact, C, [&](const Rational& q) { return NumberFieldElement(f, q); });
  return total * t.C0.lifted_to(f).pow(n);
}

}  // namespace

NumberFieldElement eval_multisum(const BalancedTerm& t, long n) {
  FactorialTable fact;
  return eval_with(t, n, fact);
}

std::vector<NumberFieldElement> eval_multisum_range(const BalancedTerm& t, long n0, long n1) {
  if (n0 > n1) throw UserError("empty n range");
  FactorialTable fact;
  std::vector<NumberFieldElement> out;
  for (long n = n0; n <= n1; ++n) out.push_back(eval_with(t, n, fact));
  return out;
}

namespace {

LinearForm form_from_json(const json& j, std::size_t r) {
  LinearForm f;
  f.coeff_n = j.value("n", 0L);
  f.constant = j.value("const", 0L);
  if (j.contains("k")) f.coeff_k = j.at("k").get<std::vector<long>>();
  if (f.coeff_k.empty()) f.coeff_k.assign(r, 0);
  return f;
}

json form_to_json(const LinearForm& f) { return json{{"n", f.coeff_n}, {"k", f.coeff_k}, {"const", f.constant}}; }

json exact_to_json(const NumberFieldElement& x) {
  return x.field()->is_rationals() ? rational_to_json(x.to_rational()) : nf_coords_to_json(x);
}

}  // namespace

BalancedTerm term_from_json(const json& j) {
  try {
    if (!j.is_object()) throw UserError("term document must be a JSON object");
    BalancedTerm t;
    t.r = j.at("r").get<std::size_t>();
    if (j.contains("minpoly")) t.field = field_from_json(j.at("minpoly"));
    t.C0 = j.contains("C0") ? nf_from_json(j.at("C0"), t.field) : NumberFieldElement(t.field, Rational(1));
    if (j.contains("C")) {
      for (const auto& c : j.at("C")) t.C.push_back(nf_from_json(c, t.field));
    } else {
      t.C.assign(t.r, NumberFieldElement(t.field, Rational(1)));
    }
    for (const auto& f : j.at("factors")) t.factors.push_back({form_from_json(f.at("form"), t.r), f.value("eps", 1)});
    if (j.contains("sign_form")) t.sign_form = form_from_json(j.at("sign_form"), t.r);
    if (j.contains("prefactors"))
      for (const auto& p : j.at("prefactors")) t.prefactors.push_back({form_from_json(p.at("form"), t.r), p.value("exp", 1L)});
    term_validate(t);
    return t;
  } catch (const json::exception& ex) {
    throw UserError(std::string("malformed term document: ") + ex.what());
  }
}

json term_to_json(const BalancedTerm& t) {
  json out;
  out["r"] = t.r;
  if (!t.field->is_rationals()) out["minpoly"] = field_to_json(*t.field);
  out["C0"] = exact_to_json(t.C0);
  json c = json::array();
  for (const auto& x : t.C) c.push_back(exact_to_json(x));
  out["C"] = std::move(c);
  json factors = json::array();
  for (const auto& f : t.factors) factors.push_back({{"form", form_to_json(f.form)}, {"eps", f.eps}});
  out["factors"] = std::move(factors);
  if (t.sign_form) out["sign_form"] = form_to_json(*t.sign_form);
  if (!t.prefactors.empty()) {
    json p = json::array();
    for (const auto& x : t.prefactors) p.push_back({{"form", form_to_json(x.form)}, {"exp", x.exponent}});
    out["prefactors"] = std::move(p);
  }
  return out;
}

namespace {

FactorialFactor fac(long n, std::vector<long> k, long c, int eps) { return {{n, std::move(k), c}, eps}; }

void repeat(std::vector<FactorialFactor>& v, const FactorialFactor& f, int times) {
  for (int i = 0; i < times; ++i) v.push_back(f);
}

}  // namespace

BalancedTerm builtin_term(const std::string& name) {
  BalancedTerm t;
  if (name == "apery-like") {
    // (n+k)!^3 (n+l)! / (k!^3 l! n!^2 (k+l)!^2 (n-k-l)!^2)
    t.r = 2;
    t.C.assign(2, NumberFieldElement(Rational(1)));
    repeat(t.factors, fac(1, {1, 0}, 0, 1), 3);
    repeat(t.factors, fac(1, {0, 1}, 0, 1), 1);
    repeat(t.factors, fac(0, {1, 0}, 0, -1), 3);
    repeat(t.factors, fac(0, {0, 1}, 0, -1), 1);
    repeat(t.factors, fac(1, {0, 0}, 0, -1), 2);
    repeat(t.factors, fac(0, {1, 1}, 0, -1), 2);
    repeat(t.factors, fac(1, {-1, -1}, 0, -1), 2);
    return t;
  }
  if (name == "tet6j" || name == "tet6j-literal") {
    // n!^6/(3n+1)!^2 * (-1)^k (k+1)! / ((k-3n)!^4 (4n-k)!^3)
    t.r = 1;
    t.C.assign(1, NumberFieldElement(Rational(1)));
    t.sign_form = LinearForm{0, {1}, 0};
    repeat(t.factors, fac(1, {0}, 0, 1), 6);
    if (name == "tet6j") {
      // (3n+1)! = (3n+1) (3n)!, (k+1)! = (k+1) k!
      repeat(t.factors, fac(3, {0}, 0, -1), 2);
      repeat(t.factors, fac(0, {1}, 0, 1), 1);
      t.prefactors.push_back({{0, {1}, 1}, 1});
      t.prefactors.push_back({{3, {0}, 1}, -2});
    } else {
      repeat(t.factors, fac(3, {0}, 1, -1), 2);
      repeat(t.factors, fac(0, {1}, 1, 1), 1);
    }
    repeat(t.factors, fac(-3, {1}, 0, -1), 4);
    repeat(t.factors, fac(4, {-1}, 0, -1), 3);
    return t;
  }
  throw UserError("unknown built-in term '" + name + "' (known: apery-like, tet6j, tet6j-literal)");
}

std::vector<std::string> builtin_term_names() { return {"apery-like", "tet6j", "tet6j-literal"}; }

}  // namespace nilsson
