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

#include "levyscale/stable.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "levyscale/error.hpp"

namespace levyscale {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::SigmaNonPositive: return "SigmaNonPositive";
    case ErrorCode::GammaOutOfRange: return "GammaOutOfRange";
    case ErrorCode::AlphaNotFatTailed: return "AlphaNotFatTailed";
    case ErrorCode::WrongAlpha: return "WrongAlpha";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::TauDoesNotDivide: return "TauDoesNotDivide";
    case ErrorCode::TauTooSmall: return "TauTooSmall";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::NonPositiveMoment: return "NonPositiveMoment";
    case ErrorCode::DegenerateGrid: return "DegenerateGrid";
    case ErrorCode::DivisionByZeroMoment: return "DivisionByZeroMoment";
    case ErrorCode::SpecMismatch: return "SpecMismatch";
    case ErrorCode::InvalidOrder: return "InvalidOrder";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::AllZeroInput: return "AllZeroInput";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

StableParams validate_params(double alpha, double sigma, double gamma) {
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw Error(ErrorCode::AlphaOutOfRange,
                "alpha must lie in (0, 2], got " + std::to_string(alpha));
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::SigmaNonPositive,
                "sigma must be positive, got " + std::to_string(sigma));
  }
  if (!std::isfinite(gamma) || (alpha != 1.0 && std::abs(gamma) > 1.0)) {
    throw Error(ErrorCode::GammaOutOfRange,
                "gamma must lie in [-1, 1] when alpha != 1, got " + std::to_string(gamma));
  }
  return StableParams(alpha, sigma, gamma);
}

ScalingLaw self_similar_scaling_law(const StableParams& p) {
  const double alpha = p.alpha();
  return ScalingLaw{alpha, [alpha](double q) { return q / alpha; }, {}};
}

bool is_valid_scaling_function(const ScalingLaw& law, std::span<const double> qs,
                               double tol) {
  if (!law.nu || std::abs(law.nu(0.0)) > tol) return false;
  // Concavity via slopes of consecutive chords on an increasing grid.
  for (std::size_t i = 2; i < qs.size(); ++i) {
    const double q0 = qs[i - 2], q1 = qs[i - 1], q2 = qs[i];
    if (!(q0 < q1 && q1 < q2) || q2 >= law.b) return false;
    const double left = (law.nu(q1) - law.nu(q0)) / (q1 - q0);
    const double right = (law.nu(q2) - law.nu(q1)) / (q2 - q1);
    if (right > left + tol) return false;
  }
  return true;
}

std::complex<double> char_exponent(double k, const StableParams& p) noexcept {
  const double sgn = k >= 0.0 ? 1.0 : -1.0;
  const double alpha = p.alpha();
  if (alpha == 1.0) {
    return {p.sigma() * std::abs(k), -p.gamma() * k};
  }
  const double mag = std::pow(p.sigma() * std::abs(k), alpha);
  return {mag, -mag * p.gamma() * std::tan(std::numbers::pi * alpha / 2.0) * sgn};
}

namespace {

void require_fat_tail(const StableParams& p) {
  if (p.alpha() >= 2.0) {
    throw Error(ErrorCode::AlphaNotFatTailed, "tail laws require alpha < 2");
  }
}

void require_positive_time(double t) {
  if (!(t > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "time t must be positive");
  }
}

// Gamma(alpha) sin(pi alpha / 2) sigma^alpha, shared by both tail laws.
double tail_kernel(const StableParams& p) {
  const double alpha = p.alpha();
  return std::tgamma(alpha) * std::sin(std::numbers::pi * alpha / 2.0) *
         std::pow(p.sigma(), alpha);
}

}  // namespace

double tail_constant(const StableParams& p) {
  require_fat_tail(p);
  return 2.0 / std::numbers::pi * tail_kernel(p);
}

TailAsymptote abs_tail_asymptote(const StableParams& p, double t) {
  require_positive_time(t);
  return {p.alpha(), t * tail_constant(p)};
}

OneSidedTail one_sided_tail_asymptote(const StableParams& p, double t, TailSide side) {
  require_fat_tail(p);
  require_positive_time(t);
  if (p.alpha() == 1.0) {
    return TailAsymptote{1.0, t * p.sigma() / std::numbers::pi};
  }
  const double skew = side == TailSide::Right ? 1.0 + p.gamma() : 1.0 - p.gamma();
  if (skew <= 0.0) return DegenerateTail{};
  return TailAsymptote{p.alpha(), t / std::numbers::pi * skew * tail_kernel(p)};
}

double cauchy_tail_exact(const StableParams& p, double t, double x) {
  if (p.alpha() != 1.0) {
    throw Error(ErrorCode::WrongAlpha, "the arctan law holds only for alpha == 1");
  }
  require_positive_time(t);
  return 0.5 - std::atan((x - t * p.gamma()) / (t * p.sigma())) / std::numbers::pi;
}

namespace {

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw Error(ErrorCode::AlphaOutOfRange, "alpha must lie in (0, 2]");
  }
}

void require_order(double q) {
  if (!(q >= 0.0)) throw Error(ErrorCode::InvalidArgument, "order q must be >= 0");
}

}  // namespace

double empirical_nu(double q, double alpha) {
  require_alpha(alpha);
  require_order(q);
  // Gaussian increments have every moment, so there is no kink at alpha == 2.
  if (alpha == 2.0) return q / 2.0;
  return q < alpha ? q / alpha : 1.0;
}

std::optional<double> theoretical_nu(double q, double alpha) {
  require_alpha(alpha);
  require_order(q);
  if (alpha == 2.0 || q < alpha) return q / alpha;
  return std::nullopt;
}

}  // namespace levyscale
