// Copyright 2026 The levyscale Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "levyscale/sampler.hpp"

namespace levyscale {

/// Per-window largest (u) and second largest (v) of |increment|^q over
/// consecutive windows of tau unit increments. The second largest is taken
/// over the multiset, so v == u when the top value repeats.
struct BlockExtremes {
  double q = 0.0;
  std::size_t tau = 0;
  std::vector<double> u;
  std::vector<double> v;
};

/// Raw-span form; no constraint between q and the law of the data.
BlockExtremes block_extremes(std::span<const double> increments, double q, std::size_t tau);

/// Requires q >= alpha of the series (InvalidOrder), tau >= 2 (TauTooSmall)
/// and tau | n (TauDoesNotDivide).
BlockExtremes block_extremes(const IncrementSeries& s, double q, std::size_t tau);

/// (sum of v) / (sum of u) over the first `upto` windows. Throws
/// ZeroDenominator when every maximum in the prefix is zero.
double ratio_rn(const BlockExtremes& e, std::size_t upto);

/// Constants behind the lower envelope lambda_N of sum_{n<N} U_n.
struct LambdaSequence {
  double q = 0.0;
  double alpha = 0.0;
  std::size_t tau = 0;
  double beta = 0.0;  ///< alpha / q, in (0, 1]
  double c = 0.0;     ///< tail constant of X_1
  double delta = 0.0;
  double k_const = 0.0;
};

/// beta = alpha/q; delta = tau c Gamma(1 - beta) / 4 (beta < 1) or tau c / 4
/// (beta == 1); k = beta delta^(1/beta) ((1 - beta)/2)^((1 - beta)/beta)
/// (beta < 1) or delta / 3 (beta == 1). Throws InvalidOrder when q < alpha.
LambdaSequence make_lambda_sequence(const StableParams& p, double q, std::size_t tau);

/// k N^(1/beta) (ln N + 1)^(-(1 - beta)/beta) for beta < 1, k N (ln N + 1)
/// for beta == 1.
double lambda_sequence(std::size_t n, const LambdaSequence& lam);

struct InequalityCheck {
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
};

/// h = 2 tau for q <= 1, (q + 2) tau^q for q > 1.
double lemma2_h(double q, std::size_t tau);
/// e = min(1, 1/q).
double lemma2_e(double q);

/// Evaluates |sum_n |sum_i d|^q / sum_n sum_i |d|^q - 1| <= h R^e on one
/// vector of tau*N reals, R being the v/u ratio of its windows. `holds`
/// allows 1e-9 relative slack. Throws AllZeroInput, TauDoesNotDivide.
InequalityCheck check_lemma2_inequality(std::span<const double> deltas, std::size_t tau,
                                        double q);

/// The scalar chains used to bound a window sum by its two largest terms:
///   q <= 1: 1 - x^q <= max(0, 1-x)^q <= (1+x)^q <= 1 + x^q
///   q > 1:  1 - x^q - q x <= max(0, 1-x)^q <= (1+x)^q <= 1 + q (1+x)^(q-1) x
/// checked with 1e-9 relative slack.
bool check_scalar_inequalities(double xi, double q);

struct ExpMomentCheck {
  double estimate = 0.0;  ///< sample mean of exp(-xi U)
  double stderr_estimate = 0.0;
  double bound = 0.0;
  bool satisfied = false;  ///< estimate <= bound + 3 stderr
};

/// Monte Carlo E[exp(-xi U_0)] against exp(-delta xi^beta) (beta < 1) or
/// exp(delta xi ln xi) (beta == 1). Only meaningful for small xi.
ExpMomentCheck exp_moment_bound(const BlockExtremes& e, double xi, const LambdaSequence& lam);

struct Lemma2SweepCell {
  std::size_t tau = 0;
  double q = 0.0;
  std::size_t vectors = 0;
  std::size_t violations = 0;
  double worst_ratio = 0.0;  ///< max lhs / rhs over the cell
};

/// Runs check_lemma2_inequality on `vectors` random inputs for every (tau, q).
/// Inputs rotate through uniform, heavy-tailed, log-uniform signed and tied
/// integer families with 1..8 blocks each. Cell i uses RngStream(seed, i).
std::vector<Lemma2SweepCell> lemma2_sweep(std::span<const std::size_t> taus,
                                          std::span<const double> qs, std::size_t vectors,
                                          std::uint64_t seed);

/// CDFs of the largest and second largest of tau i.i.d. values with common
/// CDF value f: f^tau and f^tau + tau (1 - f) f^(tau - 1).
double block_max_cdf(double f, std::size_t tau);
double block_second_cdf(double f, std::size_t tau);

/// Hill estimate of the upper-tail power exponent from the top
/// floor(fraction * n) order statistics. Needs >= 100 positive samples.
double estimate_tail_exponent(std::span<const double> samples, double fraction = 0.05);

}  // namespace levyscale
