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
#include <vector>

#include "levyscale/rng.hpp"
#include "levyscale/stable.hpp"

namespace levyscale {

/// Increments of a self-similar Levy process over consecutive windows of
/// `lag` unit steps. Freshly generated series have lag 1.
struct IncrementSeries {
  StableParams params;
  std::size_t lag = 1;
  std::uint64_t seed = 0;
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
};

/// One variate distributed as X_1 (Chambers-Mallows-Stuck).
double draw_stable(const StableParams& p, RngStream& stream) noexcept;

/// n i.i.d. unit increments drawn from stream (seed, stream_index).
IncrementSeries generate_increments(const StableParams& p, std::size_t n,
                                    std::uint64_t seed,
                                    std::uint64_t stream_index = 0);

/// Exact block sums over consecutive windows of tau increments.
/// Throws TauDoesNotDivide.
IncrementSeries aggregate(const IncrementSeries& s, std::size_t tau);

/// Path levels X_0 = 0, X_1, ..., X_n.
std::vector<double> levels(const IncrementSeries& s);

}  // namespace levyscale
