/*
 * Copyright 2026 The MoMPCA Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "mompca/random.hpp"

using namespace mompca;

TEST_CASE("philox4x32-10 known-answer vectors") {
  CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) == PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("stream layout: block words become two 64-bit draws") {
  const std::uint64_t seed = 0x0123456789abcdefULL;
  RandomStream rng(seed, 5);
  for (std::uint32_t block = 0; block < 3; ++block) {
    const PhiloxCounter w = philox4x32_10({block, 0, 5, 0}, {0x89abcdefU, 0x01234567U});
    CHECK(rng.next_u64() == ((std::uint64_t{w[1]} << 32) | w[0]));
    CHECK(rng.next_u64() == ((std::uint64_t{w[3]} << 32) | w[2]));
  }
}

TEST_CASE("streams are reproducible and independent") {
  RandomStream a(42, Stream::Partition), b(42, Stream::Partition), c(42, Stream::Recovery), d(43, Stream::Partition);
  bool differs_stream = false, differs_seed = false;
  for (int i = 0; i < 16; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    differs_stream |= x != c.next_u64();
    differs_seed |= x != d.next_u64();
  }
  CHECK(differs_stream);
  CHECK(differs_seed);
}

TEST_CASE("uniform, normal and below stay in range with plausible moments") {
  RandomStream rng(7, 99);
  double sum = 0.0, sq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    const double z = rng.normal();
    sum += z;
    sq += z * z;
    REQUIRE(rng.below(7) < 7);
  }
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(std::abs(sq / n - 1.0) < 0.02);
  CHECK(rng.below(1) == 0);
}

TEST_CASE("rademacher signs are balanced") {
  RandomStream rng(11, Stream::Rademacher);
  int total = 0;
  for (int i = 0; i < 100000; ++i) {
    const int s = rng.rademacher();
    REQUIRE((s == 1 || s == -1));
    total += s;
  }
  CHECK(std::abs(total) < 1500);
}

TEST_CASE("random_permutation is a permutation and depends on the seed") {
  for (std::size_t n : {0u, 1u, 2u, 17u, 1000u}) {
    RandomStream rng(n, Stream::Partition);
    auto perm = random_permutation(n, rng);
    std::sort(perm.begin(), perm.end());
    for (std::size_t i = 0; i < n; ++i) REQUIRE(perm[i] == i);
  }
  RandomStream r1(1, Stream::Partition), r2(2, Stream::Partition);
  CHECK(random_permutation(50, r1) != random_permutation(50, r2));
}

TEST_CASE("derive_seed separates children") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t m = 0; m < 10; ++m)
    for (std::uint64_t k = 0; k < 100; ++k) seen.insert(derive_seed(m, k));
  CHECK(seen.size() == 1000);
}
