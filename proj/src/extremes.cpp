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

#include "levyscale/extremes.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "levyscale/error.hpp"

namespace levyscale {

BlockExtremes block_extremes(std::span<const double> x, double q, std::size_t tau) {
  if (tau < 2) throw Error(ErrorCode::TauTooSmall, "window size must be >= 2");
  if (x.empty() || x.size() % tau != 0) {
    throw Error(ErrorCode::TauDoesNotDivide,
                "window " + std::to_string(tau) + " does not divide length " +
                    std::to_string(x.size()));
  }
  if (!(q > 0.0)) throw Error(ErrorCode::InvalidArgument, "order q must be positive");
  const std::size_t blocks = x.size() / tau;
  BlockExtremes out{q, tau, std::vector<double>(blocks), std::vector<double>(blocks)};
  for (std::size_t n = 0; n < blocks; ++n) {
    double top = -1.0, second = -1.0;
    for (std::size_t i = 0; i < tau; ++i) {
      const double a = std::pow(std::abs(x[n * tau + i]), q);
      if (a >= top) {
        second = top;
        top = a;
      } else if (a > second) {
        second = a;
      }
    }
    out.u[n] = top;
    out.v[n] = second;
  }
  return out;
}

BlockExtremes block_extremes(const IncrementSeries& s, double q, std::size_t tau) {
  if (q < s.params.alpha()) {
    throw Error(ErrorCode::InvalidOrder, "block extremes are studied for q >= alpha");
  }
  return block_extremes(std::span<const double>(s.values), q, tau);
}

double ratio_rn(const BlockExtremes& e, std::size_t upto) {
  if (upto == 0 || upto > e.u.size()) {
    throw Error(ErrorCode::InvalidArgument, "prefix length out of range");
  }
  double su = 0.0, sv = 0.0;
  for (std::size_t n = 0; n < upto; ++n) {
    su += e.u[n];
    sv += e.v[n];
  }
  if (!(su > 0.0)) throw Error(ErrorCode::ZeroDenominator, "all block maxima are zero");
  return sv / su;
}

LambdaSequence make_lambda_sequence(const StableParams& p, double q, std::size_t tau) {
  if (!(q >= p.alpha())) throw Error(ErrorCode::InvalidOrder, "lambda_N needs q >= alpha");
  if (tau < 1) throw Error(ErrorCode::InvalidArgument, "window size must be >= 1");
  LambdaSequence lam;
  lam.q = q;
  lam.alpha = p.alpha();
  lam.tau = tau;
  lam.beta = p.alpha() / q;
  lam.c = tail_constant(p);
  const double t = static_cast<double>(tau);
  const double beta = lam.beta;
  if (beta < 1.0) {
    lam.delta = t * lam.c * std::tgamma(1.0 - beta) / 4.0;
    lam.k_const = beta * std::pow(lam.delta, 1.0 / beta) *
                  std::pow((1.0 - beta) / 2.0, (1.0 - beta) / beta);
  } else {
    lam.delta = t * lam.c / 4.0;
    lam.k_const = lam.delta / 3.0;
  }
  return lam;
}

double lambda_sequence(std::size_t n, const LambdaSequence& lam) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "N must be >= 1");
  const double nd = static_cast<double>(n);
  const double log_term = std::log(nd) + 1.0;
  if (lam.beta < 1.0) {
    return lam.k_const * std::pow(nd, 1.0 / lam.beta) *
           std::pow(log_term, -(1.0 - lam.beta) / lam.beta);
  }
  return lam.k_const * nd * log_term;
}

double lemma2_h(double q, std::size_t tau) {
  const double t = static_cast<double>(tau);
  return q <= 1.0 ? 2.0 * t : (q + 2.0) * std::pow(t, q);
}

double lemma2_e(double q) { return std::min(1.0, 1.0 / q); }

InequalityCheck check_lemma2_inequality(std::span<const double> deltas, std::size_t tau,
                                        double q) {
  if (std::all_of(deltas.begin(), deltas.end(), [](double d) { return d == 0.0; })) {
    throw Error(ErrorCode::AllZeroInput, "the increments are all zero");
  }
  const auto ext = block_extremes(deltas, q, tau);
  double window_sum = 0.0, unit_sum = 0.0;
  for (std::size_t n = 0; n < ext.u.size(); ++n) {
    double s = 0.0;
    for (std::size_t i = 0; i < tau; ++i) {
      s += deltas[n * tau + i];
      unit_sum += std::pow(std::abs(deltas[n * tau + i]), q);
    }
    window_sum += std::pow(std::abs(s), q);
  }
  InequalityCheck out;
  out.lhs = std::abs(window_sum / unit_sum - 1.0);
  out.rhs = lemma2_h(q, tau) * std::pow(ratio_rn(ext, ext.u.size()), lemma2_e(q));
  out.holds = out.lhs <= out.rhs * (1.0 + 1e-9) + 1e-12;
  return out;
}

bool check_scalar_inequalities(double xi, double q) {
  if (!(xi > 0.0) || !(q > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "xi and q must be positive");
  }
  const auto le = [](double a, double b) {
    return a <= b + 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
  };
  const double lower_mid = std::pow(std::max(0.0, 1.0 - xi), q);
  const double upper_mid = std::pow(1.0 + xi, q);
  double lower, upper;
  if (q <= 1.0) {
    lower = 1.0 - std::pow(xi, q);
    upper = 1.0 + std::pow(xi, q);
  } else {
    lower = 1.0 - std::pow(xi, q) - q * xi;
    upper = 1.0 + q * std::pow(1.0 + xi, q - 1.0) * xi;
  }
  return le(lower, lower_mid) && le(lower_mid, upper_mid) && le(upper_mid, upper);
}

ExpMomentCheck exp_moment_bound(const BlockExtremes& e, double xi, const LambdaSequence& lam) {
  if (!(xi > 0.0)) throw Error(ErrorCode::InvalidArgument, "xi must be positive");
  if (e.u.size() < 2) throw Error(ErrorCode::TooFewSamples, "need at least two blocks");
  double sum = 0.0, sum_sq = 0.0;
  for (double u : e.u) {
    const double z = std::exp(-xi * u);
    sum += z;
    sum_sq += z * z;
  }
  const double n = static_cast<double>(e.u.size());
  ExpMomentCheck out;
  out.estimate = sum / n;
  const double var = std::max(0.0, (sum_sq - n * out.estimate * out.estimate) / (n - 1.0));
  out.stderr_estimate = std::sqrt(var / n);
  out.bound = lam.beta < 1.0 ? std::exp(-lam.delta * std::pow(xi, lam.beta))
                             : std::exp(lam.delta * xi * std::log(xi));
  out.satisfied = out.estimate <= out.bound + 3.0 * out.stderr_estimate;
  return out;
}

std::vector<Lemma2SweepCell> lemma2_sweep(std::span<const std::size_t> taus,
                                          std::span<const double> qs, std::size_t vectors,
                                          std::uint64_t seed) {
  const auto heavy = validate_params(0.8, 1.0, 0.0);
  std::vector<Lemma2SweepCell> cells;
  for (std::size_t tau : taus) {
    for (double q : qs) cells.push_back({tau, q, vectors, 0, 0.0});
  }
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < cells.size(); ++i) {
    auto& cell = cells[i];
    RngStream rng(seed, i);
    std::vector<double> deltas;
    for (std::size_t v = 0; v < vectors; ++v) {
      const std::size_t blocks = 1 + rng.next_u64() % 8;
      deltas.assign(blocks * cell.tau, 0.0);
      for (double& d : deltas) {
        switch (v % 4) {
          case 0: d = 2.0 * rng.uniform_open() - 1.0; break;
          case 1: d = draw_stable(heavy, rng); break;
          case 2: {
            const double sign = rng.next_u64() & 1 ? 1.0 : -1.0;
            d = sign * std::pow(10.0, 6.0 * rng.uniform_open() - 3.0);
            break;
          }
          default: d = static_cast<double>(rng.next_u64() % 5) - 2.0; break;
        }
      }
      if (std::all_of(deltas.begin(), deltas.end(), [](double d) { return d == 0.0; })) {
        deltas.front() = 1.0;
      }
      const auto check = check_lemma2_inequality(deltas, cell.tau, cell.q);
      if (!check.holds) ++cell.violations;
      if (check.rhs > 0.0) {
        cell.worst_ratio = std::max(cell.worst_ratio, check.lhs / check.rhs);
      }
    }
  }
  return cells;
}

double block_max_cdf(double f, std::size_t tau) {
  return std::pow(f, static_cast<double>(tau));
}

double block_second_cdf(double f, std::size_t tau) {
  const double t = static_cast<double>(tau);
  return std::pow(f, t) + t * (1.0 - f) * std::pow(f, t - 1.0);
}

double estimate_tail_exponent(std::span<const double> samples, double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "fraction must lie in (0, 1)");
  }
  if (samples.size() < 100) {
    throw Error(ErrorCode::TooFewSamples, "Hill estimation needs at least 100 samples");
  }
  const auto k = static_cast<std::size_t>(fraction * static_cast<double>(samples.size()));
  if (k < 2) throw Error(ErrorCode::TooFewSamples, "fraction leaves fewer than 2 order statistics");
  std::vector<double> sorted(samples.begin(), samples.end());
  // Only the top k+1 order statistics are needed.
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k), sorted.end(),
                   std::greater<>());
  const double threshold = sorted[k];
  if (!(threshold > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "tail samples must be positive");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < k; ++i) acc += std::log(sorted[i] / threshold);
  return static_cast<double>(k) / acc;
}

}  // namespace levyscale
