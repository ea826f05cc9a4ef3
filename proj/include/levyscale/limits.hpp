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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "levyscale/moments.hpp"

namespace levyscale {

/// Monte Carlo harness configuration. Replica r draws its unit increments
/// from RngStream(master_seed, r) unless a harness documents an offset.
struct McConfig {
  StableParams params;
  double q = 0.0;
  std::vector<std::size_t> taus;
  HorizonScheme scheme;
  std::size_t replicas = 1;
  std::uint64_t master_seed = 0;

  /// Throws InvalidArgument when replicas == 0 or a tau exceeds the horizon.
  void validate() const;
};

struct KsResult {
  double statistic = 0.0;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  double threshold = 0.0;  ///< asymptotic level-0.01 critical value

  bool rejects() const noexcept { return statistic >= threshold; }
};

/// Asymptotic level-0.01 constant of the two-sample KS test.
inline constexpr double kKsCritical001 = 1.628;

/// Exact two-sample statistic sup |F_a - F_b|. Throws EmptySample.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// sup |F_sample(x) - cdf(x)|, evaluated on both sides of every jump of
/// the empirical CDF.
template <typename Cdf>
double ks_one_sample(std::vector<double> sample, Cdf&& cdf);

/// Order-statistic summaries (linear interpolation between order stats).
double quantile(std::vector<double> values, double p);
double median(std::vector<double> values);
double interquartile_range(std::vector<double> values);

struct ConvergenceReport {
  double q = 0.0;
  std::size_t tau = 0;
  std::vector<std::size_t> ns;
  std::vector<double> medians;
  std::vector<double> spreads;  ///< IQR across replicas
  double target = 0.0;
};

/// `replicas` realisations of normed_statistic(q, tau, N); replica r uses
/// stream_index stream_offset + r.
std::vector<double> mc_normed_sample(const McConfig& cfg, std::size_t tau,
                                     const NormingSpec& spec, std::uint64_t stream_offset = 0);

struct TauPair {
  std::size_t tau_a = 0;
  std::size_t tau_b = 0;
  KsResult ks;
};

struct TauInvarianceResult {
  std::vector<TauPair> pairs;
  bool pass = false;
};

/// KS comparison of {statistic / tau} across every pair of cfg.taus. The
/// i-th tau uses independent series (stream offset i * replicas).
TauInvarianceResult tau_invariance_test(const McConfig& cfg, const NormingSpec& spec);

struct EqualityInLawResult {
  std::vector<double> direct;    ///< M^tau_N
  std::vector<double> rescaled;  ///< tau^(q/alpha) M^1_(N/tau), independent series
  KsResult ks;
};

/// Two-sample check of M^tau_N =d tau^(q/alpha) M^1_(N/tau). Direct samples
/// use streams 0..R-1, rescaled ones streams R..2R-1.
EqualityInLawResult equality_in_law_test(const McConfig& cfg, std::size_t tau);

enum class Lemma1Estimator {
  /// Sample mean of N sin(W/N), W = |X_1|^alpha.
  Plain,
  /// Sample body below `tail_cut` plus the exact integral of the power-law
  /// tail c/x above it (Fubini form of the expectation).
  TailCorrected,
};

struct Lemma1Options {
  Lemma1Estimator estimator = Lemma1Estimator::TailCorrected;
  /// Cut in units of W; 0 selects the smallest N of the ladder.
  double tail_cut = 0.0;
};

/// Estimates of E[N sin(|X_1|^alpha / N)] - c ln N for each N in `ns`, all
/// from one pool of `draws` variates.
std::vector<double> lemma1_curve(const StableParams& p, std::span<const std::size_t> ns,
                                 std::size_t draws, std::uint64_t seed,
                                 Lemma1Options options = {});

/// Cosine integral Ci(z) = -int_z^inf cos(t)/t dt for 0 < z <= 40.
double cosine_integral(double z);

/// Default ladder of multipliers k in N = k lcm(1..T).
inline const std::vector<std::uint64_t> kDefaultLadder{4, 40, 400};

/// Ratio M^tau_N / M^1_N along nested prefixes N = k lcm of one path per
/// replica. One report per tau in cfg.taus; target tau^nu_e(q).
std::vector<ConvergenceReport> ratio_convergence_study(
    const McConfig& cfg, std::span<const std::uint64_t> ladder = kDefaultLadder);

/// R_N along the same nested prefixes; one report per tau >= 2, target 0.
/// Requires q >= alpha.
std::vector<ConvergenceReport> rn_study(const McConfig& cfg,
                                        std::span<const std::uint64_t> ladder = kDefaultLadder);

struct DivergenceTrajectory {
  std::vector<double> statistic;    ///< M^tau_{N_k} / a_{N_k}, k = 1..K
  std::vector<double> running_max;  ///< prefix maxima of statistic
};

struct DivergenceReport {
  SeriesVerdict verdict = SeriesVerdict::Diverges;
  double p_exponent = 0.0;
  std::size_t tau = 0;
  std::vector<DivergenceTrajectory> replicas;
  ConvergenceReport running_max_summary;  ///< median / IQR at the ladder points
};

/// Tracks M^tau_{N_k} / N_k^p for k = 1..max(ladder) on one path per
/// replica (tau = cfg.taus.front()) and attaches the series verdict.
DivergenceReport divergence_demo(const McConfig& cfg, double p_exponent,
                                 std::span<const std::uint64_t> ladder = kDefaultLadder);

/// Share of replicas passing the qualitative check between the first and
/// last ladder points: a strictly larger running max for a Diverges verdict,
/// a statistic below 0.1 times its first value for a Converges verdict.
double divergence_pass_fraction(const DivergenceReport& rep,
                                std::span<const std::uint64_t> ladder = kDefaultLadder);

// ---------------------------------------------------------------------------

template <typename Cdf>
double ks_one_sample(std::vector<double> sample, Cdf&& cdf) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size();) {
    std::size_t j = i;
    while (j < sample.size() && sample[j] == sample[i]) ++j;
    const double f = cdf(sample[i]);
    d = std::max({d, std::abs(static_cast<double>(j) / n - f),
                  std::abs(static_cast<double>(i) / n - f)});
    i = j;
  }
  return d;
}

}  // namespace levyscale
