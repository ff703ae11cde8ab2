#include "nilsson/extract/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "nilsson/error.hpp"

namespace nilsson {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

double log_abs(const BigComplex& z) {
  if (z.is_zero()) return -std::numeric_limits<double>::infinity();
  return z.abs().log2_abs() * kLn2;
}

// Least squares for y ~ sum_j x_j c_j with up to three centred columns,
// solved through the normal equations (the columns are centred and scaled,
// so the 3x3 system is well conditioned enough for this diagnostic).
std::vector<double> least_squares(const std::vector<std::vector<double>>& cols, const std::vector<double>& y) {
  const std::size_t p = cols.size();
  std::vector<std::vector<double>> a(p, std::vector<double>(p + 1, 0.0));
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j)
      for (std::size_t r = 0; r < y.size(); ++r) a[i][j] += cols[i][r] * cols[j][r];
    for (std::size_t r = 0; r < y.size(); ++r) a[i][p] += cols[i][r] * y[r];
  }
  for (std::size_t c = 0; c < p; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < p; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    if (a[c][c] == 0) return {};
    for (std::size_t r = 0; r < p; ++r) {
      if (r == c) continue;
      double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k <= p; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::vector<double> x(p);
  for (std::size_t i = 0; i < p; ++i) x[i] = a[i][p] / a[i][i];
  return x;
}

// exp(slope in n) of log(block max |a_n|) ~ n log r + p log n + c.
double envelope_rate(const std::vector<std::pair<double, double>>& points) {
  if (points.empty()) return 0;
  if (points.size() == 1) return std::exp(points[0].second / std::max(1.0, points[0].first));
  const std::size_t blocks = std::min<std::size_t>(points.size(), 12);
  std::vector<double> ns, logs, ys;
  for (std::size_t b = 0; b < blocks; ++b) {
    std::size_t from = b * points.size() / blocks, to = (b + 1) * points.size() / blocks;
    auto best = std::max_element(points.begin() + static_cast<std::ptrdiff_t>(from),
                                 points.begin() + static_cast<std::ptrdiff_t>(to),
                                 [](const auto& x, const auto& y) { return x.second < y.second; });
    ns.push_back(best->first);
    ys.push_back(best->second);
  }
  auto centred = [](std::vector<double> v) {
    double mean = 0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double spread = 0;
    for (double& x : v) {
      x -= mean;
      spread = std::max(spread, std::fabs(x));
    }
    if (spread > 0)
      for (double& x : v) x /= spread;
    return std::make_pair(v, spread);
  };
  bool use_log = ns.size() >= 5 && ns.front() >= 1;
  auto [cn, sn] = centred(ns);
  if (sn == 0) return std::exp(ys[0] / std::max(1.0, ns[0]));
  std::vector<std::vector<double>> cols = {cn, std::vector<double>(ns.size(), 1.0)};
  if (use_log) {
    for (double n : ns) logs.push_back(std::log(n));
    auto [cl, sl] = centred(logs);
    if (sl > 0) cols.push_back(cl);
  }
  auto x = least_squares(cols, ys);
  if (x.empty()) return 0;
  return std::exp(x[0] / sn);
}

struct WindowStats {
  double envelope = 0;
  double root = 0;
};

WindowStats window_stats(const SequenceData& data, unsigned long lo, unsigned long hi) {
  std::vector<std::pair<double, double>> points;
  WindowStats s;
  for (unsigned long n = lo; n <= hi; ++n) {
    double l = log_abs(data.at(n));
    if (!std::isfinite(l)) continue;
    points.emplace_back(static_cast<double>(n), l);
    if (n >= 1) s.root = std::max(s.root, std::exp(l / static_cast<double>(n)));
  }
  s.envelope = envelope_rate(points);
  return s;
}

BigFloat h_value(const OmegaIndex& w, unsigned long k, long prec) {
  if (k >= 2) return monomial_eval(w, k, prec);
  if (w.beta != 0) throw UserError("a log-power monomial vanishes at n = 1");
  return BigFloat(1.0, prec);
}

}  // namespace

GrowthEstimate estimate_growth(const SequenceData& data, unsigned long lo, unsigned long hi) {
  data.require_window(lo, hi, "estimate_growth");
  if (hi - lo < 3) throw UserError("estimate_growth needs a window of at least four values");
  bool any = false;
  for (unsigned long n = lo; n <= hi && !any; ++n) any = !data.at(n).is_zero();
  if (!any) throw UserError("estimate_growth: every value in the window is zero");

  unsigned long mid = lo + (hi - lo) / 2;
  auto all = window_stats(data, lo, hi);
  auto first = window_stats(data, lo, mid);
  auto second = window_stats(data, mid, hi);
  GrowthEstimate g;
  g.r = all.envelope;
  g.r_first = first.envelope;
  g.r_second = second.envelope;
  g.root_max = all.root;
  g.root_first = first.root;
  g.root_second = second.root;
  double top = std::max(g.r_first, g.r_second);
  g.spread = top > 0 ? std::fabs(g.r_first - g.r_second) / top : 0;
  g.stable = top > 0 && g.spread <= kGrowthTolerance;
  if (g.stable) {
    g.trend = "stable";
    g.note = "window halves agree within " + std::to_string(kGrowthTolerance) + " (relative)";
  } else if (g.r_second < g.r_first) {
    g.trend = "decaying";
    g.note = "|a_n|^(1/n) keeps decaying across the window: limsup ~ 0, not Nilsson-representable "
             "(Nilsson sequences have r > 0)";
  } else {
    g.trend = "growing";
    g.note = "growth rate keeps increasing across the window: super-exponential, not Nilsson-representable";
  }
  return g;
}

std::vector<std::vector<BigComplex>> average_trace(const SequenceData& data, const std::vector<BigComplex>& lambdas,
                                                   const BigFloat& r, const OmegaIndex& leading, unsigned long N) {
  if (lambdas.empty()) throw UserError("average_extract needs at least one growth rate");
  if (r.sign() <= 0) throw UserError("average_extract needs r > 0");
  const long prec = std::max(r.precision(), data.values.empty() ? 128L : data.values.front().precision());
  for (const auto& l : lambdas) {
    double dev = std::fabs((l.abs() / r).to_double() - 1.0);
    if (dev > 1e-9)
      throw UserError("growth rate with |lambda| = " + l.abs().str(12) + " is not on the circle of radius " + r.str(12));
  }
  unsigned long first = std::max<unsigned long>(data.n_min, leading.beta > 0 ? 2 : 1);
  if (N < first) throw UserError("average_extract: N = " + std::to_string(N) + " is below the first usable index");
  data.require_window(first, N, "average_extract");

  const BigFloat one(1.0, prec);
  const BigFloat inv_r = one / r;
  std::vector<BigComplex> step, phase;
  for (const auto& l : lambdas) {
    // (lambda/r)^-1 = r / lambda
    step.push_back(BigComplex(r.with_precision(prec)) / l.with_precision(prec));
    phase.push_back(pow(step.back(), static_cast<long>(first) - 1));
  }
  BigFloat r_pow = pow(inv_r, static_cast<long>(first) - 1);
  std::vector<BigComplex> sums(lambdas.size(), BigComplex(prec));
  std::vector<std::vector<BigComplex>> trace;
  trace.reserve(N - first + 1);
  for (unsigned long k = first; k <= N; ++k) {
    r_pow *= inv_r;
    BigComplex w = (r_pow / h_value(leading, k, prec)) * data.at(k).with_precision(prec);
    std::vector<BigComplex> row;
    row.reserve(lambdas.size());
    const BigFloat count(static_cast<double>(k - first + 1), prec);
    for (std::size_t j = 0; j < lambdas.size(); ++j) {
      phase[j] *= step[j];
      sums[j] += w * phase[j];
      row.emplace_back(sums[j].real() / count, sums[j].imag() / count);
    }
    trace.push_back(std::move(row));
  }
  return trace;
}

AverageResult average_extract(const SequenceData& data, const std::vector<BigComplex>& lambdas, const BigFloat& r,
                              const OmegaIndex& leading, unsigned long N) {
  auto trace = average_trace(data, lambdas, r, leading, N);
  const unsigned long first = N + 1 - trace.size();
  AverageResult out;
  out.coefficients = trace.back();
  auto at = [&](unsigned long M) { return trace[std::max(M, first) - first]; };
  out.at_half = at(N / 2);
  out.at_quarter = at(N / 4);

  const long prec = out.coefficients.front().precision();
  BigFloat inv_r = BigFloat(1.0, prec) / r;
  double total = 0;
  BigFloat r_pow = pow(inv_r, static_cast<long>(first) - 1);
  for (unsigned long k = first; k <= N; ++k) {
    r_pow *= inv_r;
    total += (r_pow * data.at(k).abs() / h_value(leading, k, prec)).to_double();
  }
  out.scale = total / static_cast<double>(trace.size());

  double previous = 0;
  for (std::size_t j = 0; j < lambdas.size(); ++j) {
    out.drift = std::max(out.drift, (out.coefficients[j] - out.at_half[j]).abs().to_double());
    previous = std::max(previous, (out.at_half[j] - out.at_quarter[j]).abs().to_double());
  }
  // Cesaro averages of the other frequencies decay like 1/N; a drift that
  // neither shrinks between the checkpoints nor sits at the 1/N scale means
  // the leading monomial is wrong.
  double floor = 8 * out.scale / static_cast<double>(trace.size());
  out.converged = out.drift <= std::max(0.6 * previous, floor);
  out.note = out.converged ? "averages converge at the expected 1/N rate"
                           : "partial averages drift (|c(N) - c(N/2)| = " + std::to_string(out.drift) +
                                 "): the leading monomial does not match the data";
  return out;
}

GevreyEstimate gevrey_diagnostic(const std::vector<BigComplex>& g) {
  if (g.size() < 5) throw UserError("gevrey_diagnostic needs a series of order K >= 4");
  GevreyEstimate out;
  for (std::size_t k = 2; k < g.size(); ++k) {
    double l = log_abs(g[k]);
    double v = std::isfinite(l) ? std::exp((l - std::lgamma(static_cast<double>(k) + 1)) / static_cast<double>(k)) : 0.0;
    out.per_order.push_back(v);
    out.C = std::max(out.C, v);
  }
  bool up = true, down = true;
  for (std::size_t i = 1; i < out.per_order.size(); ++i) {
    const double slack = 1e-12 * std::max(out.per_order[i], out.per_order[i - 1]);
    up = up && out.per_order[i] >= out.per_order[i - 1] - slack;
    down = down && out.per_order[i] <= out.per_order[i - 1] + slack;
  }
  if (down && !up) out.note = "decreasing: coefficients grow slower than C^k k! (entire-type tail)";
  else if (up && !down) out.note = "increasing: the bound is set by the highest order available";
  else if (up && down) out.note = "flat: consistent with exact Gevrey-1 growth";
  else out.note = "not monotone";
  return out;
}

}  // namespace nilsson
