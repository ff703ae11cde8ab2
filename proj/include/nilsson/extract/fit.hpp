#pragma once

#include <string>
#include <vector>

#include "nilsson/extract/sequence.hpp"
#include "nilsson/series/expansion.hpp"

namespace nilsson {

// lambda^n n^(-alpha-k) (log n)^beta
struct FitMonomial {
  BigComplex lambda;
  Rational alpha;
  unsigned beta = 0;
  unsigned k = 0;
};

struct FitModel {
  std::vector<FitMonomial> monomials;
  unsigned long lo = 0, hi = 0;  // window
  long precision_bits = 256;
};

struct FitResult {
  std::vector<BigComplex> coefficients;
  double residual_norm = 0;       // relative: ||A c - b|| / ||b|| after row weighting
  double condition_estimate = 0;  // of the column-equilibrated design matrix
  double stability_digits = 0;    // min over significant coefficients
  std::vector<double> coefficient_digits;
  std::vector<BigComplex> first_half, second_half;
};

// Weighted least squares via Householder QR at the model precision. Rows
// are scaled by 1 / (r^n h(n)) for the dominant monomial so that every
// equation has comparable size. Throws NumericalError when the condition
// estimate exceeds 10^(digits/2).
FitResult fit_coefficients(const SequenceData& data, const FitModel& model);

// Model document: {"monomials": [{"lambda", "alpha", "beta", "k"}]} or
// {"branches": [{"lambda", "alpha", "beta", "terms"}]} (k = 0..terms-1),
// optional "window": "lo:hi" and "precision".
FitModel fit_model_from_json(const json& j, long default_precision);
json fit_model_to_json(const FitModel& m);
json fit_result_to_json(const FitResult& r);

// Groups k = 0..K monomials per (lambda, alpha, beta) into expansion terms:
// stokes = c_0 and g_k = c_k / c_0.
NumericExpansion fit_to_expansion(const FitModel& model, const FitResult& result);

struct CheckRow {
  OmegaIndex cut;
  double start_max = 0;       // max normalized residual over the first block of the window
  double end_max = 0;         // ... over the last block
  double upper_half_max = 0;  // ... over the upper half
  double decay_factor = 0;    // start_max / end_max
  bool machine_zero = false;
  bool pass = false;
};

struct CheckReport {
  std::vector<CheckRow> rows;
  unsigned long lo = 0, hi = 0;
  bool pass = false;
};

// Residual ladder: for each cut w, |a_n r^-n - partial_sum_scaled(e, w, n)| / h_w(n)
// over the window. A row passes when it decays by at least a factor 2
// between the first and the last eighth of the window, or is at machine zero.
CheckReport check_expansion(const SequenceData& data, const NumericExpansion& e, const std::vector<OmegaIndex>& cuts,
                            unsigned long lo, unsigned long hi, long precision_bits = 256);
json check_report_to_json(const CheckReport& r);

}  // namespace nilsson
