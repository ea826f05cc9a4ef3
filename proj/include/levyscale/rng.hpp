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

#include <array>
#include <cstdint>

namespace levyscale {

/// Philox4x64-10 counter-based block function (Salmon et al., SC'11).
/// Maps a 256-bit counter and a 128-bit key to 256 pseudo-random bits.
std::array<std::uint64_t, 4> philox4x64(std::array<std::uint64_t, 4> counter,
                                        std::array<std::uint64_t, 2> key) noexcept;

/// A reproducible random stream identified by (master_seed, stream_index).
///
/// The pair is used as the Philox key and the counter walks from zero, so
/// the produced sequence is a pure function of the pair and distinct
/// stream indices never share a block. This is the only generator used for
/// simulation in the library.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index) noexcept
      : key_{master_seed, stream_index} {}

  std::uint64_t master_seed() const noexcept { return key_[0]; }
  std::uint64_t stream_index() const noexcept { return key_[1]; }

  std::uint64_t next_u64() noexcept {
    if (pos_ == 4) refill();
    return block_[pos_++];
  }

  /// Uniform on the open interval (0, 1) with 53-bit resolution.
  double uniform_open() noexcept {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  void refill() noexcept;

  std::array<std::uint64_t, 2> key_;
  std::array<std::uint64_t, 4> counter_{0, 0, 0, 0};
  std::array<std::uint64_t, 4> block_{};
  int pos_ = 4;
};

}  // namespace levyscale
