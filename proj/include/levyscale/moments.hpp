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

/// lcm(1, 2, ..., T). Throws Overflow past the uint64 range (T >= 43).
std::uint64_t lcm_first(std::size_t horizon);

/// Sample sizes N = multiplier * lcm(1..horizon), so that every window size
/// tau <= horizon splits the series into whole blocks.
class HorizonScheme {
 public:
  HorizonScheme(std::size_t horizon, std::uint64_t multiplier);

  std::size_t horizon() const noexcept { return horizon_; }
  std::uint64_t lcm() const noexcept { return lcm_; }
  std::uint64_t multiplier() const noexcept { return multiplier_; }
  std::size_t n() const noexcept { return static_cast<std::size_t>(lcm_ * multiplier_); }

  /// Largest valid sample size not exceeding `length`, 0 if none.
  std::size_t truncate(std::size_t length) const noexcept;

 private:
  std::size_t horizon_;
  std::uint64_t lcm_;
  std::uint64_t multiplier_;
};

/// Empirical moment of order q at window size tau: the average of
/// |block sum|^q over the n/tau consecutive windows. Uses 0^0 = 1.
double empirical_moment(std::span<const double> increments, double q, std::size_t tau);
double empirical_moment(const IncrementSeries& s, double q, std::size_t tau);

struct MomentGrid {
  std::vector<double> qs;
  std::vector<std::size_t> taus;
  std::size_t n = 0;
  /// values[iq][it] for qs[iq], taus[it].
  std::vector<std::vector<double>> values;

  /// Row of moments for order q (exact match). Throws InvalidArgument.
  std::span<const double> row(double q) const;
};

/// Moments over qs x {1..horizon}. The series length must equal scheme.n().
MomentGrid moment_grid(const IncrementSeries& s, std::span<const double> qs,
                       const HorizonScheme& scheme);

/// Default order grid: 0, 0.25, ..., 2 alpha.
std::vector<double> default_q_grid(double alpha);

struct ScalingFit {
  double q = 0.0;
  double nu_hat = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  double r2 = 0.0;
};

/// Unweighted least squares of ln M[q][tau] on ln tau over all taus.
/// Throws NonPositiveMoment, DegenerateGrid.
ScalingFit fit_scaling(const MomentGrid& grid, double q);

/// M[q][tau] / M[q][1]. Throws DivisionByZeroMoment.
double ratio_normalized(const MomentGrid& grid, double q, std::size_t tau);

enum class NormingKind { Raw, CenteredLog, PowerNormed };

/// Normalisation of the empirical moment under which its law converges.
/// CenteredLog needs q == alpha; PowerNormed needs q > alpha.
struct NormingSpec {
  NormingKind kind = NormingKind::Raw;
  double q = 0.0;
  double alpha = 0.0;
  double c = 0.0;
};

/// Fills c from the tail constant of p. Throws SpecMismatch when the kind is
/// inconsistent with (q, alpha).
NormingSpec make_norming(NormingKind kind, double q, const StableParams& p);

/// raw: M; centered_log: M - c tau ln(N / tau); power_normed: N^(1 - q/alpha) M.
double normed_statistic(std::span<const double> increments, std::size_t tau,
                        const NormingSpec& spec);
double normed_statistic(const IncrementSeries& s, std::size_t tau, const NormingSpec& spec);

enum class SeriesVerdict { Converges, Diverges };

/// Convergence of sum_k (k a_{N_k})^(-alpha/q) for a_N = N^p, i.e. of the
/// p-series with exponent (1 + p) alpha / q. Throws InvalidOrder when q < alpha.
SeriesVerdict feller_classifier(double p_exponent, double q, double alpha);

}  // namespace levyscale
