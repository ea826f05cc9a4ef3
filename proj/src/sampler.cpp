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

#include "levyscale/sampler.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "levyscale/error.hpp"

namespace levyscale {

// The characteristic exponent
//
//   psi(k) = sigma^a |k|^a [1 - i gamma tan(pi a / 2) sgn k]   (a != 1)
//   psi(k) = sigma |k| - i gamma k                             (a == 1)
//
// coincides, for a != 1, with the S_a(sigma, beta = gamma, mu = 0) law of
// Samorodnitsky-Taqqu, so the standard CMS construction applies with
// beta = gamma and no shift. For a == 1 the law is a Cauchy of scale sigma
// centred at gamma (gamma is a drift, not a skewness), sampled exactly as
// gamma + sigma tan(V).
//
// With V ~ U(-pi/2, pi/2) and W ~ Exp(1), for a != 1:
//   B = atan(beta tan(pi a / 2)) / a
//   S = (1 + beta^2 tan^2(pi a / 2))^(1 / (2a))
//   X = S sin(a (V + B)) / cos(V)^(1/a) * (cos(V - a (V + B)) / W)^((1 - a) / a)
double draw_stable(const StableParams& p, RngStream& stream) noexcept {
  constexpr double half_pi = std::numbers::pi / 2.0;
  const double v = std::numbers::pi * (stream.uniform_open() - 0.5);
  const double w = -std::log(stream.uniform_open());
  const double alpha = p.alpha();
  if (alpha == 1.0) {
    return p.gamma() + p.sigma() * std::tan(v);
  }
  const double t = p.gamma() * std::tan(half_pi * alpha);
  const double b = std::atan(t) / alpha;
  const double s = std::pow(1.0 + t * t, 1.0 / (2.0 * alpha));
  const double avb = alpha * (v + b);
  const double x = s * std::sin(avb) / std::pow(std::cos(v), 1.0 / alpha) *
                   std::pow(std::cos(v - avb) / w, (1.0 - alpha) / alpha);
  return p.sigma() * x;
}

IncrementSeries generate_increments(const StableParams& p, std::size_t n,
                                    std::uint64_t seed, std::uint64_t stream_index) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "series length must be >= 1");
  RngStream stream(seed, stream_index);
  IncrementSeries out{p, 1, seed, {}};
  out.values.resize(n);
  for (auto& v : out.values) v = draw_stable(p, stream);
  return out;
}

IncrementSeries aggregate(const IncrementSeries& s, std::size_t tau) {
  if (tau == 0 || s.size() % tau != 0) {
    throw Error(ErrorCode::TauDoesNotDivide,
                "window " + std::to_string(tau) + " does not divide length " +
                    std::to_string(s.size()));
  }
  IncrementSeries out{s.params, s.lag * tau, s.seed, {}};
  out.values.resize(s.size() / tau);
  for (std::size_t m = 0; m < out.values.size(); ++m) {
    double sum = 0.0;
    for (std::size_t i = 0; i < tau; ++i) sum += s.values[m * tau + i];
    out.values[m] = sum;
  }
  return out;
}

std::vector<double> levels(const IncrementSeries& s) {
  std::vector<double> out(s.size() + 1, 0.0);
  for (std::size_t i = 0; i < s.size(); ++i) out[i + 1] = out[i] + s.values[i];
  return out;
}

}  // namespace levyscale
