#include "nilsson/extract/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "nilsson/error.hpp"

namespace nilsson {

namespace {

constexpr double kLog10of2 = 0.30102999566398119521;

OmegaIndex omega_of(const FitMonomial& m) { return {m.alpha + Rational(static_cast<long>(m.k)), m.beta}; }

struct Solve {
  std::vector<BigComplex> coefficients;
  std::vector<BigFloat> column_norms;
  double residual_norm = 0;
  double condition = 0;
};

// Householder QR least squares of the weighted design matrix on [lo, hi].
Solve solve_window(const SequenceData& data, const FitModel& model, unsigned long lo, unsigned long hi) {
  const long prec = model.precision_bits;
  const std::size_t p = model.monomials.size();
  const std::size_t m = hi - lo + 1;
  if (m < p + 2)
    throw UserError("fit window " + std::to_string(lo) + ":" + std::to_string(hi) + " has " + std::to_string(m) +
                    " equations; the model needs at least " + std::to_string(p + 2));

  // Row weights 1 / (r^n h_dom(n)) for the dominant monomial.
  OmegaIndex dom = omega_of(model.monomials.front());
  BigFloat r(prec);
  for (const auto& mono : model.monomials) {
    dom = std::min(dom, omega_of(mono));
    r = max(r, mono.lambda.with_precision(prec).abs());
  }
  if (r.is_zero()) throw UserError("fit model growth rates must be nonzero");

  std::vector<std::vector<BigComplex>> a(m, std::vector<BigComplex>(p, BigComplex(prec)));
  std::vector<BigComplex> b(m, BigComplex(prec));
  std::vector<BigComplex> phase, step;
  for (const auto& mono : model.monomials) {
    BigComplex s = mono.lambda.with_precision(prec) / BigComplex(r);
    step.push_back(s);
    phase.push_back(pow(s, static_cast<long>(lo)));
  }
  const BigFloat inv_r = BigFloat(1.0, prec) / r;
  BigFloat r_pow = pow(inv_r, static_cast<long>(lo));
  for (std::size_t i = 0; i < m; ++i) {
    unsigned long n = lo + i;
    BigFloat hd = monomial_eval(dom, n, prec);
    for (std::size_t j = 0; j < p; ++j) {
      BigFloat ratio = monomial_eval(omega_of(model.monomials[j]), n, prec) / hd;
      a[i][j] = ratio * phase[j];
      phase[j] *= step[j];
    }
    b[i] = (r_pow / hd) * data.at(n).with_precision(prec);
    r_pow *= inv_r;
  }

  // Column equilibration.
  Solve out;
  for (std::size_t j = 0; j < p; ++j) {
    BigFloat norm2(prec);
    for (std::size_t i = 0; i < m; ++i) norm2 += a[i][j].norm();
    BigFloat norm = sqrt(norm2);
    if (norm.is_zero()) throw NumericalError("fit model column " + std::to_string(j) + " vanishes on the window");
    BigFloat inv = BigFloat(1.0, prec) / norm;
    for (std::size_t i = 0; i < m; ++i) a[i][j] = inv * a[i][j];
    out.column_norms.push_back(norm);
  }
  BigFloat b_norm2(prec);
  for (const auto& x : b) b_norm2 += x.norm();

  // Householder: H = I - 2 v v^* / (v^* v) applied column by column.
  for (std::size_t k = 0; k < p; ++k) {
    BigFloat xnorm2(prec);
    for (std::size_t i = k; i < m; ++i) xnorm2 += a[i][k].norm();
    BigFloat xnorm = sqrt(xnorm2);
    if (xnorm.is_zero()) throw NumericalError("fit design matrix is rank deficient (dependent model monomials)");
    BigComplex x0 = a[k][k];
    BigComplex unit = x0.is_zero() ? BigComplex(Rational(1), prec) : BigComplex(BigFloat(1.0, prec) / x0.abs()) * x0;
    BigComplex alpha = -(xnorm * unit);
    std::vector<BigComplex> v(m - k, BigComplex(prec));
    for (std::size_t i = k; i < m; ++i) v[i - k] = a[i][k];
    v[0] -= alpha;
    BigFloat vnorm2(prec);
    for (const auto& z : v) vnorm2 += z.norm();
    if (vnorm2.is_zero()) continue;
    BigFloat two_over = BigFloat(2.0, prec) / vnorm2;
    auto reflect = [&](auto&& get) {
      BigComplex dot(prec);
      for (std::size_t i = k; i < m; ++i) dot += v[i - k].conj() * get(i);
      dot = two_over * dot;
      for (std::size_t i = k; i < m; ++i) get(i) -= dot * v[i - k];
    };
    for (std::size_t j = k; j < p; ++j) reflect([&](std::size_t i) -> BigComplex& { return a[i][j]; });
    reflect([&](std::size_t i) -> BigComplex& { return b[i]; });
  }

  // Back substitution for y, then c_j = y_j / ||column_j||.
  std::vector<BigComplex> y(p, BigComplex(prec));
  for (std::size_t k = p; k-- > 0;) {
    BigComplex acc = b[k];
    for (std::size_t j = k + 1; j < p; ++j) acc -= a[k][j] * y[j];
    if (a[k][k].is_zero()) throw NumericalError("fit design matrix is rank deficient (dependent model monomials)");
    y[k] = acc / a[k][k];
  }
  for (std::size_t j = 0; j < p; ++j) out.coefficients.push_back((BigFloat(1.0, prec) / out.column_norms[j]) * y[j]);

  BigFloat res2(prec);
  for (std::size_t i = p; i < m; ++i) res2 += b[i].norm();
  out.residual_norm = b_norm2.is_zero() ? 0.0 : sqrt(res2 / b_norm2).to_double();

  // cond_F(R) = ||R||_F ||R^-1||_F, an upper bound for the 2-norm condition.
  std::vector<std::vector<BigComplex>> inv(p, std::vector<BigComplex>(p, BigComplex(prec)));
  for (std::size_t c = 0; c < p; ++c) {
    for (std::size_t k = p; k-- > 0;) {
      BigComplex acc = k == c ? BigComplex(Rational(1), prec) : BigComplex(prec);
      for (std::size_t j = k + 1; j < p; ++j) acc -= a[k][j] * inv[j][c];
      inv[k][c] = acc / a[k][k];
    }
  }
  BigFloat rf(prec), rif(prec);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i; j < p; ++j) {
      rf += a[i][j].norm();
      rif += inv[i][j].norm();
    }
  out.condition = (sqrt(rf) * sqrt(rif)).to_double();
  double digits = static_cast<double>(prec) * kLog10of2;
  if (!(out.condition <= std::pow(10.0, digits / 2)))
    throw NumericalError("ill-conditioned fit: condition estimate " + std::to_string(out.condition) +
                         " exceeds 10^" + std::to_string(static_cast<int>(digits / 2)) + " at " +
                         std::to_string(prec) + " bits");
  return out;
}

double digits_between(const BigComplex& a, const BigComplex& b, const BigFloat& scale, double cap) {
  BigFloat diff = (a - b).abs();
  if (diff.is_zero() || scale.is_zero()) return cap;
  double d = -std::log10((diff / scale).to_double());
  return std::clamp(d, 0.0, cap);
}

BigComplex lambda_from_json(const json& j, long prec) {
  if (j.is_object() && j.contains("minpoly")) {
    NumberFieldElement x = nf_from_json(j);
    return nf_embed(x, j.value("root", 0ul), prec);
  }
  return complex_from_json(j, prec);
}

std::pair<unsigned long, unsigned long> parse_window(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw UserError("window must look like lo:hi, got '" + text + "'");
  try {
    return {std::stoul(text.substr(0, colon)), std::stoul(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw UserError("window must look like lo:hi, got '" + text + "'");
  }
}

}  // namespace

FitResult fit_coefficients(const SequenceData& data, const FitModel& model) {
  if (model.monomials.empty()) throw UserError("fit model has no monomials");
  if (model.lo < 2) throw UserError("fit window must start at n >= 2 (log n and n^-alpha need n > 1)");
  data.require_window(model.lo, model.hi, "fit");
  Solve full = solve_window(data, model, model.lo, model.hi);
  FitResult out;
  out.coefficients = full.coefficients;
  out.residual_norm = full.residual_norm;
  out.condition_estimate = full.condition;

  const double cap = static_cast<double>(model.precision_bits) * kLog10of2;
  const std::size_t p = model.monomials.size();
  out.coefficient_digits.assign(p, 0.0);
  unsigned long mid = model.lo + (model.hi - model.lo) / 2;
  try {
    out.first_half = solve_window(data, model, model.lo, mid).coefficients;
    out.second_half = solve_window(data, model, mid, model.hi).coefficients;
  } catch (const std::exception&) {
    // Halves too short or too ill-conditioned: no stability claim.
    out.stability_digits = 0;
    return out;
  }
  // Significance by contribution to the weighted data.
  const long prec = model.precision_bits;
  std::vector<BigFloat> contribution;
  BigFloat top(prec);
  for (std::size_t j = 0; j < p; ++j) {
    contribution.push_back(full.coefficients[j].abs() * full.column_norms[j]);
    top = max(top, contribution.back());
  }
  double stability = cap;
  for (std::size_t j = 0; j < p; ++j) {
    bool significant = contribution[j] >= ldexp(top, -27);  // ~1e-8
    if (significant) {
      out.coefficient_digits[j] = digits_between(out.first_half[j], out.second_half[j], full.coefficients[j].abs(), cap);
      stability = std::min(stability, out.coefficient_digits[j]);
    } else {
      // Relative to the dominant contribution instead.
      BigFloat scale = top / full.column_norms[j];
      out.coefficient_digits[j] = digits_between(out.first_half[j], out.second_half[j], scale, cap);
    }
  }
  out.stability_digits = stability;
  return out;
}

FitModel fit_model_from_json(const json& j, long default_precision) {
  try {
    if (!j.is_object()) throw UserError("model document must be a JSON object");
    FitModel m;
    m.precision_bits = j.value("precision", default_precision);
    if (m.precision_bits < kMinPrecision) throw UserError("fit precision must be at least 53 bits");
    if (j.contains("window")) std::tie(m.lo, m.hi) = parse_window(j.at("window").get<std::string>());
    auto base = [&](const json& x) {
      FitMonomial mono;
      mono.lambda = lambda_from_json(x.at("lambda"), m.precision_bits + kGuardBits);
      mono.alpha = rational_from_json(x.at("alpha"));
      mono.beta = x.value("beta", 0u);
      return mono;
    };
    if (j.contains("monomials"))
      for (const auto& x : j.at("monomials")) {
        FitMonomial mono = base(x);
        mono.k = x.value("k", 0u);
        m.monomials.push_back(std::move(mono));
      }
    if (j.contains("branches"))
      for (const auto& x : j.at("branches")) {
        FitMonomial mono = base(x);
        unsigned terms = x.value("terms", 1u);
        if (terms == 0) throw UserError("a branch needs at least one term");
        for (unsigned k = 0; k < terms; ++k) {
          mono.k = k;
          m.monomials.push_back(mono);
        }
      }
    if (m.monomials.empty()) throw UserError("model document needs 'monomials' or 'branches'");
    return m;
  } catch (const json::exception& ex) {
    throw UserError(std::string("malformed model document: ") + ex.what());
  }
}

json fit_model_to_json(const FitModel& m) {
  json monos = json::array();
  for (const auto& x : m.monomials)
    monos.push_back({{"lambda", complex_to_json(x.lambda)},
                     {"alpha", rational_to_json(x.alpha)},
                     {"beta", x.beta},
                     {"k", x.k}});
  return {{"monomials", std::move(monos)},
          {"window", std::to_string(m.lo) + ":" + std::to_string(m.hi)},
          {"precision", m.precision_bits}};
}

json fit_result_to_json(const FitResult& r) {
  json c = json::array(), first = json::array(), second = json::array();
  for (const auto& z : r.coefficients) c.push_back(complex_to_json(z));
  for (const auto& z : r.first_half) first.push_back(complex_to_json(z));
  for (const auto& z : r.second_half) second.push_back(complex_to_json(z));
  return {{"coefficients", std::move(c)},
          {"residual_norm", r.residual_norm},
          {"condition_estimate", r.condition_estimate},
          {"stability_digits", r.stability_digits},
          {"coefficient_digits", r.coefficient_digits},
          {"first_half", std::move(first)},
          {"second_half", std::move(second)}};
}

NumericExpansion fit_to_expansion(const FitModel& model, const FitResult& result) {
  if (result.coefficients.size() != model.monomials.size())
    throw UserError("fit result does not match the model");
  const long prec = model.precision_bits;
  NumericExpansion e;
  // (lambda index, alpha, beta) -> k -> coefficient
  std::map<std::tuple<std::size_t, Rational, unsigned>, std::map<unsigned, BigComplex>> groups;
  for (std::size_t j = 0; j < model.monomials.size(); ++j) {
    const auto& mono = model.monomials[j];
    std::size_t li = e.lambdas.size();
    for (std::size_t i = 0; i < e.lambdas.size(); ++i)
      if (relative_distance(e.lambdas[i], mono.lambda) <= ldexp(BigFloat(1.0, prec), -(prec / 2))) li = i;
    if (li == e.lambdas.size()) e.lambdas.push_back(mono.lambda.with_precision(prec));
    auto [it, fresh] = groups[{li, mono.alpha, mono.beta}].try_emplace(mono.k, result.coefficients[j]);
    if (!fresh) throw UserError("fit model repeats a monomial");
  }
  for (const auto& [key, ks] : groups) {
    const auto& [li, alpha, beta] = key;
    auto lead = ks.find(0);
    if (lead == ks.end() || lead->second.abs().is_zero())
      throw UserError("each fitted branch needs a nonzero k = 0 coefficient to become an expansion term");
    std::vector<BigComplex> g(ks.rbegin()->first + 1, BigComplex(prec));
    for (const auto& [k, c] : ks) g[k] = c / lead->second;
    g[0] = BigComplex(Rational(1), prec);
    e.terms.push_back({li, alpha, beta, lead->second, TruncatedSeries<BigComplex>(std::move(g), true)});
  }
  std::tie(e.S, e.d) = implied_omega(e);
  e.r_hint = e.lambdas.front().abs().to_double();
  expansion_validate(e, 1e-20, prec);
  return e;
}

CheckReport check_expansion(const SequenceData& data, const NumericExpansion& e, const std::vector<OmegaIndex>& cuts,
                            unsigned long lo, unsigned long hi, long precision_bits) {
  if (cuts.empty()) throw UserError("check needs at least one cut");
  for (std::size_t i = 1; i < cuts.size(); ++i)
    if (!(cuts[i - 1] < cuts[i])) throw UserError("cuts must be strictly ascending in the Omega order");
  if (lo < 2) throw UserError("check window must start at n >= 2");
  data.require_window(lo, hi, "check");
  const long prec = precision_bits;
  BigFloat r = expansion_radius(e, prec);
  BigFloat inv_r = BigFloat(1.0, prec) / r;

  const std::size_t len = hi - lo + 1;
  const std::size_t block = std::max<std::size_t>(1, len / 8);
  std::vector<BigComplex> scaled;
  BigFloat data_scale(prec);
  BigFloat r_pow = pow(inv_r, static_cast<long>(lo));
  for (unsigned long n = lo; n <= hi; ++n) {
    scaled.push_back(r_pow * data.at(n).with_precision(prec));
    data_scale = max(data_scale, scaled.back().abs());
    r_pow *= inv_r;
  }
  // Residuals below this (relative to the data) count as exact agreement.
  const long zero_bits = std::min(prec, data.values.front().precision()) - 3 * kGuardBits;
  const BigFloat zero_level = ldexp(max(data_scale, BigFloat(1e-300, prec)), -zero_bits);

  CheckReport report;
  report.lo = lo;
  report.hi = hi;
  report.pass = true;
  for (const auto& cut : cuts) {
    CheckRow row;
    row.cut = cut;
    row.machine_zero = true;
    for (std::size_t i = 0; i < len; ++i) {
      unsigned long n = lo + i;
      BigFloat diff = (scaled[i] - expansion_partial_sum_scaled(e, cut, n, prec)).abs();
      row.machine_zero = row.machine_zero && diff <= zero_level;
      double v = (diff / monomial_eval(cut, n, prec)).to_double();
      if (i < block) row.start_max = std::max(row.start_max, v);
      if (i >= len - block) row.end_max = std::max(row.end_max, v);
      if (i >= len / 2) row.upper_half_max = std::max(row.upper_half_max, v);
    }
    row.decay_factor = row.end_max > 0 ? row.start_max / row.end_max : std::numeric_limits<double>::infinity();
    row.pass = row.machine_zero || row.decay_factor >= 2.0;
    report.pass = report.pass && row.pass;
    report.rows.push_back(row);
  }
  return report;
}

json check_report_to_json(const CheckReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json d = std::isfinite(row.decay_factor) ? json(row.decay_factor) : json(nullptr);
    rows.push_back({{"cut", row.cut.str()},
                    {"start_max", row.start_max},
                    {"end_max", row.end_max},
                    {"upper_half_max", row.upper_half_max},
                    {"decay_factor", std::move(d)},
                    {"machine_zero", row.machine_zero},
                    {"status", row.pass ? "PASS" : "FAIL"}});
  }
  return {{"window", std::to_string(r.lo) + ":" + std::to_string(r.hi)},
          {"status", r.pass ? "PASS" : "FAIL"},
          {"rows", std::move(rows)}};
}

}  // namespace nilsson
