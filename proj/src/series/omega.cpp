#include "nilsson/series/omega.hpp"

#include "nilsson/error.hpp"

namespace nilsson {

std::strong_ordering operator<=>(const OmegaIndex& a, const OmegaIndex& b) {
  if (auto c = a.alpha <=> b.alpha; c != 0) return c;
  return b.beta <=> a.beta;
}

std::strong_ordering omega_cmp(const OmegaIndex& a, const OmegaIndex& b) { return a <=> b; }

OmegaIndex OmegaIndex::parse(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw UserError("omega index '" + text + "' must look like alpha,beta");
  Rational beta = Rational::parse(text.substr(comma + 1));
  if (!beta.is_integer() || beta.sign() < 0) throw UserError("omega beta must be a natural number in '" + text + "'");
  return {Rational::parse(text.substr(0, comma)), static_cast<unsigned>(beta.num().get_ui())};
}

std::string OmegaIndex::str() const { return alpha.str() + "," + std::to_string(beta); }

bool in_omega(const OmegaIndex& w, const std::vector<Rational>& base, unsigned max_log_power) {
  if (w.beta > max_log_power) return false;
  for (const auto& s : base) {
    Rational shift = w.alpha - s;
    if (shift.is_integer() && shift.sign() >= 0) return true;
  }
  return false;
}

BigFloat monomial_eval(const OmegaIndex& w, unsigned long n, long precision_bits) {
  if (n < 2) throw UserError("Nilsson monomials are evaluated at n >= 2 (log n > 0), got n = " + std::to_string(n));
  const long wp = precision_bits + kGuardBits;
  BigFloat nn(Integer(n), wp);
  BigFloat logn = log(nn);
  BigFloat value = w.alpha.is_integer() ? pow(nn, -w.alpha.num().get_si())
                                        : exp(-(BigFloat(w.alpha, wp) * logn));
  if (w.beta > 0) value *= pow(logn, static_cast<long>(w.beta));
  return value.with_precision(precision_bits);
}

std::vector<OmegaIndex> parse_omega_list(const std::string& text) {
  std::vector<OmegaIndex> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(';', start);
    std::string item = text.substr(start, end == std::string::npos ? std::string::npos : end - start);
    if (!item.empty()) out.push_back(OmegaIndex::parse(item));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

}  // namespace nilsson
