#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "nilsson/error.hpp"

namespace nilsson {

// Formal power series c_0 + c_1 x + ... + c_K x^K, truncated at order K.
// T is any ring with value semantics (Rational, NumberFieldElement,
// BigComplex, Polynomial). A "normalized" series is one whose constant
// coefficient is known to be 1 (the g-series of an expansion).
template <class T>
class TruncatedSeries {
 public:
  TruncatedSeries() = default;
  explicit TruncatedSeries(std::vector<T> coefficients, bool normalized = false)
      : coeffs_(std::move(coefficients)), normalized_(normalized) {
    if (coeffs_.empty()) throw UserError("a truncated series needs at least its constant coefficient");
  }

  // c + 0 x + ... + 0 x^K; `zero` supplies the domain's additive identity.
  static TruncatedSeries constant(const T& c, std::size_t order, const T& zero) {
    std::vector<T> v(order + 1, zero);
    v[0] = c;
    return TruncatedSeries(std::move(v));
  }

  std::size_t order() const noexcept { return coeffs_.size() - 1; }
  bool normalized() const noexcept { return normalized_; }
  const std::vector<T>& coefficients() const noexcept { return coeffs_; }
  const T& operator[](std::size_t k) const { return coeffs_.at(k); }
  T& operator[](std::size_t k) {
    normalized_ = normalized_ && k != 0;
    return coeffs_.at(k);
  }

  TruncatedSeries truncated(std::size_t order) const {
    if (order > this->order()) throw UserError("cannot raise the truncation order of a series");
    return TruncatedSeries(std::vector<T>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(order) + 1),
                           normalized_);
  }

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    std::size_t k = std::min(a.order(), b.order());
    std::vector<T> v;
    v.reserve(k + 1);
    for (std::size_t i = 0; i <= k; ++i) v.push_back(a.coeffs_[i] + b.coeffs_[i]);
    return TruncatedSeries(std::move(v));
  }
  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    std::size_t k = std::min(a.order(), b.order());
    std::vector<T> v;
    v.reserve(k + 1);
    for (std::size_t i = 0; i <= k; ++i) v.push_back(a.coeffs_[i] - b.coeffs_[i]);
    return TruncatedSeries(std::move(v));
  }
  // Cauchy product truncated at the smaller order.
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    std::size_t k = std::min(a.order(), b.order());
    std::vector<T> v;
    v.reserve(k + 1);
    for (std::size_t m = 0; m <= k; ++m) {
      T acc = a.coeffs_[0] * b.coeffs_[m];
      for (std::size_t i = 1; i <= m; ++i) acc += a.coeffs_[i] * b.coeffs_[m - i];
      v.push_back(std::move(acc));
    }
    return TruncatedSeries(std::move(v), a.normalized_ && b.normalized_);
  }
  template <class S>
  TruncatedSeries scaled(const S& s) const {
    std::vector<T> v;
    v.reserve(coeffs_.size());
    for (const auto& c : coeffs_) v.push_back(c * s);
    return TruncatedSeries(std::move(v));
  }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<T> coeffs_;
  bool normalized_ = false;
};

}  // namespace nilsson
