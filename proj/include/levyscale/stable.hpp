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

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <variant>

namespace levyscale {

/// Parameters (alpha, sigma, gamma) of a strictly stable law, i.e. of X_1 for
/// a self-similar Levy process with E[exp(ikX_t)] = exp(-t psi(k)).
///
/// Only constructible through validate_params(), so a held value is always
/// admissible: 0 < alpha <= 2, sigma > 0 and |gamma| <= 1 unless alpha == 1.
/// For alpha == 1 gamma is a drift and may take any real value.
class StableParams {
 public:
  double alpha() const noexcept { return alpha_; }
  double sigma() const noexcept { return sigma_; }
  double gamma() const noexcept { return gamma_; }

  /// Self-similarity exponent H = 1/alpha.
  double hurst() const noexcept { return 1.0 / alpha_; }

  bool operator==(const StableParams&) const = default;

 private:
  friend StableParams validate_params(double alpha, double sigma, double gamma);
  StableParams(double a, double s, double g) : alpha_(a), sigma_(s), gamma_(g) {}

  double alpha_;
  double sigma_;
  double gamma_;
};

/// Throws Error{AlphaOutOfRange | SigmaNonPositive | GammaOutOfRange}.
StableParams validate_params(double alpha, double sigma, double gamma);

/// Moment scaling law E|X_t|^q = mu(q) t^nu(q) on 0 <= q < b.
struct ScalingLaw {
  double b = 0.0;
  std::function<double(double)> nu;
  /// Empty when no closed form is available.
  std::function<double(double)> mu;
};

/// b = alpha and nu(q) = q/alpha; mu is left empty.
ScalingLaw self_similar_scaling_law(const StableParams& p);

/// nu(0) == 0 and nu concave on the given grid (second differences <= tol).
bool is_valid_scaling_function(const ScalingLaw& law, std::span<const double> qs,
                               double tol = 1e-12);

/// Power-law tail P[. > x] ~ prefactor * x^(-exponent).
struct TailAsymptote {
  double exponent = 0.0;
  double prefactor = 0.0;
};

/// One-sided tail that is empty or exponentially thin (boundary skewness).
struct DegenerateTail {};

using OneSidedTail = std::variant<TailAsymptote, DegenerateTail>;

enum class TailSide { Right, Left };

/// psi(k) with the sgn(0) = +1 convention.
std::complex<double> char_exponent(double k, const StableParams& p) noexcept;

/// c = (2/pi) Gamma(alpha) sin(pi alpha / 2) sigma^alpha. Throws
/// AlphaNotFatTailed for alpha == 2.
double tail_constant(const StableParams& p);

/// P[|X_t| > x] ~ t c x^-alpha.
TailAsymptote abs_tail_asymptote(const StableParams& p, double t);

/// Right or left tail of X_t. For alpha == 1 the asymptote of the exact
/// arctan law, t sigma / (pi x), is returned for both sides and any gamma.
OneSidedTail one_sided_tail_asymptote(const StableParams& p, double t, TailSide side);

/// Exact P[X_t > x] for alpha == 1. Throws WrongAlpha otherwise.
double cauchy_tail_exact(const StableParams& p, double t, double x);

/// Piecewise-linear scaling function of empirical moments: min(q/alpha, 1).
double empirical_nu(double q, double alpha);

/// q/alpha for q < alpha; nullopt when E|X_1|^q is infinite.
std::optional<double> theoretical_nu(double q, double alpha);

}  // namespace levyscale
