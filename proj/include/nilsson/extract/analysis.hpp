#pragma once

#include <string>
#include <vector>

#include "nilsson/extract/sequence.hpp"
#include "nilsson/series/omega.hpp"

namespace nilsson {

// Relative disagreement between window halves accepted as "stable".
inline constexpr double kGrowthTolerance = 0.02;

struct GrowthEstimate {
  // Envelope estimate: least squares of log(block max |a_n|) against
  // (n, log n, 1), i.e. |a_n| ~ C r^n n^p; exact for Nilsson envelopes.
  double r = 0;
  double r_first = 0, r_second = 0;  // the same over the two window halves
  // Literal estimator: max over the window of |a_n|^(1/n) (and halves).
  double root_max = 0;
  double root_first = 0, root_second = 0;
  double spread = 0;  // |r_first - r_second| / max(r_first, r_second)
  bool stable = false;
  std::string trend;  // "stable", "decaying" or "growing"
  std::string note;
};

GrowthEstimate estimate_growth(const SequenceData& data, unsigned long lo, unsigned long hi);

struct AverageResult {
  std::vector<BigComplex> coefficients;  // one per lambda, at N
  std::vector<BigComplex> at_half;       // the same averages at N/2
  std::vector<BigComplex> at_quarter;    // ... and at N/4
  double scale = 0;                      // mean |a_k r^-k / h(k)|
  double drift = 0;                      // max |c(N) - c(N/2)|
  bool converged = false;
  std::string note;
};

// Cesaro extraction c = (1/N) sum_{k<=N} a_k r^-k / h_w(k) (lambda/r)^-k for
// each lambda (which must satisfy |lambda| = r). Sums start at
// max(n_min, 1), or 2 when w has a log power.
AverageResult average_extract(const SequenceData& data, const std::vector<BigComplex>& lambdas, const BigFloat& r,
                              const OmegaIndex& leading, unsigned long N);
// Running averages c(M) for every M in [first, N]: result[M - first][j].
std::vector<std::vector<BigComplex>> average_trace(const SequenceData& data, const std::vector<BigComplex>& lambdas,
                                                   const BigFloat& r, const OmegaIndex& leading, unsigned long N);

struct GevreyEstimate {
  double C = 0;                  // max over k in [2, K] of (|g_k| / k!)^(1/k)
  std::vector<double> per_order;  // (|g_k| / k!)^(1/k) for k = 2..K
  std::string note;              // monotonicity of per_order
};

GevreyEstimate gevrey_diagnostic(const std::vector<BigComplex>& g);

}  // namespace nilsson
