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
#include <doctest.h>

#include <array>
#include <cstdint>
#include <set>

#include "levyscale/rng.hpp"

using namespace levyscale;

// Reference words from numpy.random.Philox(key=[k0, k1], counter=0).

TEST_CASE("philox4x64 known answers") {
  const auto b0 = philox4x64({0, 0, 0, 0}, {0, 0});
  CHECK(b0[0] == 0x16554d9eca36314cULL);
  CHECK(b0[1] == 0xdb20fe9d672d0fdcULL);
  CHECK(b0[2] == 0xd7e772cee186176bULL);
  CHECK(b0[3] == 0x7e68b68aec7ba23bULL);
  const auto b1 = philox4x64({1, 0, 0, 0}, {0, 0});
  CHECK(b1[0] == 0x02f4ba6408e4d89bULL);
  CHECK(b1[1] == 0x3dd62b0b9ca8c5b2ULL);
  CHECK(b1[2] == 0x1c8667a55d902e79ULL);
  CHECK(b1[3] == 0x907d7a052fd5b4dcULL);
}

TEST_CASE("RngStream walks the counter") {
  RngStream s(42, 7);
  const std::array<std::uint64_t, 8> expected{
      0x2fd1bc0d2c8697bbULL, 0x8ee17f67a549bba6ULL, 0x1bdce1f847e7df47ULL,
      0xe123b6bbe4e89f03ULL, 0xa64064f34e84b9a3ULL, 0xe287959a866a08fdULL,
      0x8dc181f009b96c03ULL, 0xf3f6001d4fa83454ULL};
  for (auto w : expected) CHECK(s.next_u64() == w);
  CHECK(s.master_seed() == 42);
  CHECK(s.stream_index() == 7);
}

TEST_CASE("streams are pure functions of their key") {
  RngStream a(5, 1), b(5, 1), c(5, 2), d(6, 1);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    seen.insert(x);
    seen.insert(c.next_u64());
    seen.insert(d.next_u64());
  }
  CHECK(seen.size() == 300);
}

TEST_CASE("uniform_open stays inside (0, 1)") {
  RngStream s(1, 0);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = s.uniform_open();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / 100000 == doctest::Approx(0.5).epsilon(0.01));
}
