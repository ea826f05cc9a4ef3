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

#include "levyscale/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "levyscale/error.hpp"

namespace levyscale {

std::uint64_t lcm_first(std::size_t horizon) {
  if (horizon == 0) throw Error(ErrorCode::InvalidArgument, "horizon must be >= 1");
  std::uint64_t acc = 1;
  for (std::uint64_t t = 2; t <= horizon; ++t) {
    const std::uint64_t step = t / std::gcd(acc, t);
    if (acc > std::numeric_limits<std::uint64_t>::max() / step) {
      throw Error(ErrorCode::Overflow,
                  "lcm(1.." + std::to_string(horizon) + ") exceeds 64 bits");
    }
    acc *= step;
  }
  return acc;
}

HorizonScheme::HorizonScheme(std::size_t horizon, std::uint64_t multiplier)
    : horizon_(horizon), lcm_(lcm_first(horizon)), multiplier_(multiplier) {
  if (multiplier == 0) throw Error(ErrorCode::InvalidArgument, "multiplier must be >= 1");
  if (lcm_ > std::numeric_limits<std::uint64_t>::max() / multiplier) {
    throw Error(ErrorCode::Overflow, "sample size overflows");
  }
}

std::size_t HorizonScheme::truncate(std::size_t length) const noexcept {
  return static_cast<std::size_t>(length / lcm_ * lcm_);
}

namespace {

inline double abs_pow(double x, double q) noexcept {
  const double a = std::abs(x);
  if (q == 1.0) return a;
  if (q == 2.0) return a * a;
  return std::pow(a, q);  // pow(0, 0) == 1
}

void require_divides(std::size_t n, std::size_t tau) {
  if (tau == 0 || n == 0 || n % tau != 0) {
    throw Error(ErrorCode::TauDoesNotDivide,
                "window " + std::to_string(tau) + " does not divide length " +
                    std::to_string(n));
  }
}

void require_order(double q) {
  if (!(q >= 0.0)) throw Error(ErrorCode::InvalidArgument, "order q must be >= 0");
}

// Block sums are computed once per tau and reused for every order.
std::vector<double> block_sums(std::span<const double> x, std::size_t tau) {
  std::vector<double> out(x.size() / tau);
  for (std::size_t m = 0; m < out.size(); ++m) {
    double sum = 0.0;
    for (std::size_t i = 0; i < tau; ++i) sum += x[m * tau + i];
    out[m] = sum;
  }
  return out;
}

double mean_abs_pow(std::span<const double> blocks, double q) noexcept {
  double acc = 0.0;
  for (double b : blocks) acc += abs_pow(b, q);
  return acc / static_cast<double>(blocks.size());
}

}  // namespace

double empirical_moment(std::span<const double> increments, double q, std::size_t tau) {
  require_order(q);
  require_divides(increments.size(), tau);
  if (tau == 1) return mean_abs_pow(increments, q);
  return mean_abs_pow(block_sums(increments, tau), q);
}

double empirical_moment(const IncrementSeries& s, double q, std::size_t tau) {
  return empirical_moment(std::span<const double>(s.values), q, tau);
}

std::span<const double> MomentGrid::row(double q) const {
  for (std::size_t i = 0; i < qs.size(); ++i) {
    if (qs[i] == q) return values[i];
  }
  throw Error(ErrorCode::InvalidArgument, "order " + std::to_string(q) + " not in grid");
}

MomentGrid moment_grid(const IncrementSeries& s, std::span<const double> qs,
                       const HorizonScheme& scheme) {
  if (s.size() != scheme.n()) {
    throw Error(ErrorCode::InvalidArgument,
                "series length " + std::to_string(s.size()) + " differs from scheme N = " +
                    std::to_string(scheme.n()));
  }
  for (double q : qs) require_order(q);
  MomentGrid grid;
  grid.qs.assign(qs.begin(), qs.end());
  grid.n = s.size();
  grid.taus.resize(scheme.horizon());
  std::iota(grid.taus.begin(), grid.taus.end(), std::size_t{1});
  grid.values.assign(qs.size(), std::vector<double>(grid.taus.size()));
  for (std::size_t it = 0; it < grid.taus.size(); ++it) {
    const auto blocks = block_sums(s.values, grid.taus[it]);
    for (std::size_t iq = 0; iq < qs.size(); ++iq) {
      grid.values[iq][it] = mean_abs_pow(blocks, qs[iq]);
    }
  }
  return grid;
}

std::vector<double> default_q_grid(double alpha) {
  std::vector<double> qs;
  for (int i = 0; 0.25 * i <= 2.0 * alpha + 1e-12; ++i) qs.push_back(0.25 * i);
  return qs;
}

ScalingFit fit_scaling(const MomentGrid& grid, double q) {
  const auto row = grid.row(q);
  const std::size_t n = grid.taus.size();
  if (n < 2) throw Error(ErrorCode::DegenerateGrid, "need at least two window sizes");
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(row[i] > 0.0)) {
      throw Error(ErrorCode::NonPositiveMoment,
                  "moment at tau = " + std::to_string(grid.taus[i]) + " is not positive");
    }
    xs[i] = std::log(static_cast<double>(grid.taus[i]));
    ys[i] = std::log(row[i]);
  }
  const double nd = static_cast<double>(n);
  const double xbar = std::accumulate(xs.begin(), xs.end(), 0.0) / nd;
  const double ybar = std::accumulate(ys.begin(), ys.end(), 0.0) / nd;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - xbar) * (xs[i] - xbar);
    sxy += (xs[i] - xbar) * (ys[i] - ybar);
    syy += (ys[i] - ybar) * (ys[i] - ybar);
  }
  if (!(sxx > 0.0)) throw Error(ErrorCode::DegenerateGrid, "window sizes are not distinct");
  ScalingFit fit;
  fit.q = q;
  fit.nu_hat = sxy / sxx;
  fit.intercept = ybar - fit.nu_hat * xbar;
  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ys[i] - (fit.intercept + fit.nu_hat * xs[i]);
    sse += r * r;
  }
  fit.stderr_slope = n > 2 ? std::sqrt(sse / (nd - 2.0) / sxx) : 0.0;
  // A flat response is fitted exactly by a zero slope.
  fit.r2 = syy > 0.0 ? std::clamp(1.0 - sse / syy, 0.0, 1.0) : 1.0;
  return fit;
}

double ratio_normalized(const MomentGrid& grid, double q, std::size_t tau) {
  const auto row = grid.row(q);
  std::size_t it = 0;
  while (it < grid.taus.size() && grid.taus[it] != tau) ++it;
  if (it == grid.taus.size()) {
    throw Error(ErrorCode::InvalidArgument, "window " + std::to_string(tau) + " not in grid");
  }
  if (grid.taus.front() != 1 || !(row[0] > 0.0)) {
    throw Error(ErrorCode::DivisionByZeroMoment, "unit-window moment is zero");
  }
  return row[it] / row[0];
}

NormingSpec make_norming(NormingKind kind, double q, const StableParams& p) {
  NormingSpec spec{kind, q, p.alpha(), 0.0};
  if (kind == NormingKind::CenteredLog && q != p.alpha()) {
    throw Error(ErrorCode::SpecMismatch, "log centering requires q == alpha");
  }
  if (kind == NormingKind::PowerNormed && !(q > p.alpha())) {
    throw Error(ErrorCode::SpecMismatch, "power norming requires q > alpha");
  }
  if (kind != NormingKind::Raw) spec.c = tail_constant(p);
  return spec;
}

double normed_statistic(std::span<const double> increments, std::size_t tau,
                        const NormingSpec& spec) {
  const double moment = empirical_moment(increments, spec.q, tau);
  const double n = static_cast<double>(increments.size());
  switch (spec.kind) {
    case NormingKind::Raw:
      return moment;
    case NormingKind::CenteredLog:
      if (spec.q != spec.alpha) {
        throw Error(ErrorCode::SpecMismatch, "log centering requires q == alpha");
      }
      return moment - spec.c * static_cast<double>(tau) * std::log(n / static_cast<double>(tau));
    case NormingKind::PowerNormed:
      if (!(spec.q > spec.alpha)) {
        throw Error(ErrorCode::SpecMismatch, "power norming requires q > alpha");
      }
      return std::pow(n, 1.0 - spec.q / spec.alpha) * moment;
  }
  return moment;
}

double normed_statistic(const IncrementSeries& s, std::size_t tau, const NormingSpec& spec) {
  return normed_statistic(std::span<const double>(s.values), tau, spec);
}

SeriesVerdict feller_classifier(double p_exponent, double q, double alpha) {
  if (!(alpha > 0.0) || !(q >= alpha)) {
    throw Error(ErrorCode::InvalidOrder, "the dichotomy needs q >= alpha > 0");
  }
  if (!(p_exponent >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "norming exponent must be >= 0");
  }
  // p-series sum_k k^-s with s = (1 + p) alpha / q; the boundary s == 1 is
  // the harmonic series, so round-off around it must not flip the verdict.
  const double s = (1.0 + p_exponent) * alpha / q;
  return s > 1.0 + 1e-12 ? SeriesVerdict::Converges : SeriesVerdict::Diverges;
}

}  // namespace levyscale
