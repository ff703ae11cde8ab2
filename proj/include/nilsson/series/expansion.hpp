#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "nilsson/error.hpp"
#include "nilsson/series/omega.hpp"
#include "nilsson/series/scalar.hpp"
#include "nilsson/series/truncated_series.hpp"

namespace nilsson {

// One branch S * lambda^n * n^(-alpha) * (log n)^beta * g(1/n) of the
// factored expansion.
template <class T>
struct ExpansionTerm {
  std::size_t lambda_index = 0;
  Rational alpha;
  unsigned beta = 0;
  T stokes;
  TruncatedSeries<T> g;

  OmegaIndex omega(std::size_t k = 0) const { return {alpha + Rational(static_cast<long>(k)), beta}; }
};

// a_n ~ sum over terms of S * lambda^n * h_(alpha+k, beta)(n) * g_k.
// Omega = (S + N) x {0..d} is kept implicit; only finitely many
// coefficients are ever stored.
template <class T>
struct NilssonExpansion {
  using Context = typename ScalarTraits<T>::Context;

  Context context;
  std::vector<T> lambdas;
  std::vector<ExpansionTerm<T>> terms;
  unsigned d = 0;
  std::vector<Rational> S;
  std::optional<double> r_hint;
};

// Flattened view: entries[i][j] = c_(rows[i], lambdas[j]); rows strictly
// ascending in the Omega order.
template <class T>
struct CoefficientMatrix {
  using Context = typename ScalarTraits<T>::Context;

  Context context;
  std::vector<OmegaIndex> rows;
  std::vector<T> lambdas;
  std::vector<std::vector<T>> entries;
};

using ExactExpansion = NilssonExpansion<NumberFieldElement>;
using NumericExpansion = NilssonExpansion<BigComplex>;

// Smallest representative in [0, 1) of alpha modulo the integers.
inline Rational fractional_part(const Rational& alpha) { return alpha - Rational(alpha.floor()); }

// Base set S (one minimal alpha per residue class mod 1) and log bound d
// implied by the stored terms.
template <class T>
std::pair<std::vector<Rational>, unsigned> implied_omega(const NilssonExpansion<T>& e) {
  std::map<Rational, Rational> by_class;
  unsigned d = 0;
  for (const auto& t : e.terms) {
    d = std::max(d, t.beta);
    auto [it, inserted] = by_class.emplace(fractional_part(t.alpha), t.alpha);
    if (!inserted && t.alpha < it->second) it->second = t.alpha;
  }
  std::vector<Rational> s;
  for (const auto& [cls, a] : by_class) s.push_back(a);
  std::sort(s.begin(), s.end());
  return {s, d};
}

// Checks the structural invariants; numeric modulus agreement of the
// lambdas is tested at `precision_bits` with relative tolerance `tol`.
template <class T>
void expansion_validate(const NilssonExpansion<T>& e, double tol = 1e-20, long precision_bits = 192) {
  using Tr = ScalarTraits<T>;
  if (e.lambdas.empty()) throw UserError("expansion has no growth rates");
  for (const auto& t : e.terms) {
    if (t.lambda_index >= e.lambdas.size())
      throw UserError("term lambda_index " + std::to_string(t.lambda_index) + " out of range");
    if (t.beta > e.d) throw UserError("term log power " + std::to_string(t.beta) + " exceeds d");
    if (!e.S.empty() && !in_omega(t.omega(), e.S, e.d))
      throw UserError("term exponent " + t.alpha.str() + " is not in S + N");
    if (t.g.normalized() && !Tr::is_one(t.g[0])) throw UserError("normalized g-series must start with 1");
  }
  auto embed = Tr::embedder(e.context, precision_bits);
  BigFloat r0 = embed(e.lambdas.front()).abs();
  if (r0.is_zero()) throw UserError("growth rate 0 is not allowed");
  for (const auto& l : e.lambdas) {
    BigFloat r = embed(l).abs();
    if (abs(r - r0) > BigFloat(tol, precision_bits) * r0)
      throw UserError("growth rates must share one modulus: |lambda| = " + r.str(12) + " vs " + r0.str(12));
  }
}

template <class T>
BigFloat expansion_radius(const NilssonExpansion<T>& e, long precision_bits) {
  if (e.lambdas.empty()) throw UserError("expansion has no growth rates");
  return ScalarTraits<T>::embedder(e.context, precision_bits)(e.lambdas.front()).abs();
}

template <class T>
CoefficientMatrix<T> expansion_flatten(const NilssonExpansion<T>& e) {
  using Tr = ScalarTraits<T>;
  std::map<OmegaIndex, std::map<std::size_t, T>> cells;
  std::optional<T> zero;
  for (const auto& t : e.terms) {
    if (!zero) zero = Tr::zero(e.context, t.stokes);
    for (std::size_t k = 0; k <= t.g.order(); ++k) {
      T v = t.stokes * t.g[k];
      auto& row = cells[t.omega(k)];
      auto it = row.find(t.lambda_index);
      if (it == row.end()) row.emplace(t.lambda_index, std::move(v));
      else it->second += v;
    }
  }
  CoefficientMatrix<T> m{e.context, {}, e.lambdas, {}};
  for (auto& [w, row] : cells) {
    m.rows.push_back(w);
    std::vector<T> line(e.lambdas.size(), *zero);
    for (auto& [j, v] : row) line[j] = std::move(v);
    m.entries.push_back(std::move(line));
  }
  return m;
}

// Drops every all-zero row and every all-zero lambda column.
template <class T>
CoefficientMatrix<T> matrix_prune(const CoefficientMatrix<T>& m) {
  using Tr = ScalarTraits<T>;
  std::vector<std::size_t> keep_cols;
  for (std::size_t j = 0; j < m.lambdas.size(); ++j) {
    bool nonzero = std::any_of(m.entries.begin(), m.entries.end(), [&](const auto& row) { return !Tr::is_zero(row[j]); });
    if (nonzero) keep_cols.push_back(j);
  }
  CoefficientMatrix<T> out{m.context, {}, {}, {}};
  for (auto j : keep_cols) out.lambdas.push_back(m.lambdas[j]);
  for (std::size_t i = 0; i < m.rows.size(); ++i) {
    std::vector<T> line;
    bool nonzero = false;
    for (auto j : keep_cols) {
      nonzero = nonzero || !Tr::is_zero(m.entries[i][j]);
      line.push_back(m.entries[i][j]);
    }
    if (!nonzero) continue;
    out.rows.push_back(m.rows[i]);
    out.entries.push_back(std::move(line));
  }
  return out;
}

// Canonical factored form of a coefficient matrix: for every lambda, log
// power and residue class of alpha mod 1, one term whose Stokes constant is
// the first nonzero coefficient and whose normalized g-series runs to the
// last nonzero coefficient of that chain.
template <class T>
NilssonExpansion<T> expansion_unflatten(const CoefficientMatrix<T>& m, unsigned d, std::vector<Rational> S) {
  using Tr = ScalarTraits<T>;
  NilssonExpansion<T> e{m.context, m.lambdas, {}, d, std::move(S), std::nullopt};
  // (lambda, beta, alpha class) -> alpha -> coefficient
  std::map<std::tuple<std::size_t, unsigned, Rational>, std::map<Rational, const T*>> chains;
  for (std::size_t i = 0; i < m.rows.size(); ++i) {
    for (std::size_t j = 0; j < m.lambdas.size(); ++j) {
      if (Tr::is_zero(m.entries[i][j])) continue;
      const auto& w = m.rows[i];
      chains[{j, w.beta, fractional_part(w.alpha)}][w.alpha] = &m.entries[i][j];
    }
  }
  for (const auto& [key, chain] : chains) {
    const Rational& first = chain.begin()->first;
    const Rational& last = chain.rbegin()->first;
    const T& stokes = *chain.begin()->second;
    std::size_t order = static_cast<std::size_t>((last - first).num().get_ui());
    T zero = Tr::zero(m.context, stokes);
    std::vector<T> g(order + 1, zero);
    for (const auto& [alpha, v] : chain) g[static_cast<std::size_t>((alpha - first).num().get_ui())] = *v / stokes;
    g[0] = Tr::one(m.context, stokes);
    e.terms.push_back({std::get<0>(key), first, std::get<1>(key), stokes, TruncatedSeries<T>(std::move(g), true)});
  }
  std::sort(e.terms.begin(), e.terms.end(), [](const auto& a, const auto& b) {
    if (a.lambda_index != b.lambda_index) return a.lambda_index < b.lambda_index;
    return a.omega() < b.omega();
  });
  if (e.d == 0 && e.S.empty()) std::tie(e.S, e.d) = implied_omega(e);
  return e;
}

// Minimal representative: all-zero lambdas and Omega rows removed, put in
// the canonical factored form of expansion_unflatten.
template <class T>
NilssonExpansion<T> expansion_minimize(const NilssonExpansion<T>& e) {
  auto pruned = matrix_prune(expansion_flatten(e));
  if (pruned.rows.empty()) throw UserError("expansion is identically zero; a Nilsson expansion needs a nonzero coefficient");
  auto out = expansion_unflatten(pruned, e.d, e.S);
  out.r_hint = e.r_hint;
  return out;
}

template <class T>
NumericExpansion expansion_to_numeric(const NilssonExpansion<T>& e, long precision_bits) {
  auto embed = ScalarTraits<T>::embedder(e.context, precision_bits);
  NumericExpansion out{{}, {}, {}, e.d, e.S, e.r_hint};
  for (const auto& l : e.lambdas) out.lambdas.push_back(embed(l));
  for (const auto& t : e.terms) {
    std::vector<BigComplex> g;
    for (const auto& c : t.g.coefficients()) g.push_back(embed(c));
    out.terms.push_back({t.lambda_index, t.alpha, t.beta, embed(t.stokes), TruncatedSeries<BigComplex>(std::move(g), t.g.normalized())});
  }
  return out;
}

// sum over omega' <= cut of h_omega'(n) sum_lambda c_(omega',lambda) (lambda/r)^n,
// i.e. the model prediction divided by r^n.
BigComplex expansion_partial_sum_scaled(const NumericExpansion& e, const OmegaIndex& cut, unsigned long n,
                                        long precision_bits);

template <class T>
BigComplex expansion_partial_sum_scaled(const NilssonExpansion<T>& e, const OmegaIndex& cut, unsigned long n,
                                        long precision_bits) {
  return expansion_partial_sum_scaled(expansion_to_numeric(e, precision_bits + kGuardBits), cut, n, precision_bits);
}

// r^n * expansion_partial_sum_scaled: the model prediction through `cut`.
template <class T>
BigComplex expansion_partial_sum(const NilssonExpansion<T>& e, const OmegaIndex& cut, unsigned long n,
                                 long precision_bits) {
  long wp = precision_bits + kGuardBits;
  BigFloat r = expansion_radius(e, wp);
  BigComplex scaled = expansion_partial_sum_scaled(e, cut, n, wp);
  return (pow(r, static_cast<long>(n)) * scaled).with_precision(precision_bits);
}

// Prop. 2.3 style equality of minimal forms: same lambda set (up to order),
// same Omega rows, same coefficients. Numeric values compare with relative
// tolerance `tol`; exact values compare exactly.
template <class T>
bool expansion_canonical_equal(const NilssonExpansion<T>& a, const NilssonExpansion<T>& b, double tol) {
  using Tr = ScalarTraits<T>;
  if constexpr (Tr::exact) {
    if (a.context.root != b.context.root && !(a.context.field->is_rationals() && b.context.field->is_rationals()))
      return false;
  }
  auto ma = matrix_prune(expansion_flatten(a));
  auto mb = matrix_prune(expansion_flatten(b));
  if (ma.rows != mb.rows || ma.lambdas.size() != mb.lambdas.size()) return false;
  std::vector<std::size_t> perm(ma.lambdas.size());
  std::vector<bool> used(mb.lambdas.size(), false);
  for (std::size_t i = 0; i < ma.lambdas.size(); ++i) {
    bool found = false;
    for (std::size_t j = 0; j < mb.lambdas.size() && !found; ++j) {
      if (used[j] || !Tr::equal(ma.lambdas[i], mb.lambdas[j], tol)) continue;
      perm[i] = j;
      used[j] = found = true;
    }
    if (!found) return false;
  }
  for (std::size_t r = 0; r < ma.rows.size(); ++r)
    for (std::size_t i = 0; i < ma.lambdas.size(); ++i)
      if (!Tr::equal(ma.entries[r][i], mb.entries[r][perm[i]], tol)) return false;
  return true;
}

}  // namespace nilsson
