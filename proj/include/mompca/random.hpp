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

#pragma once

// Counter-based random streams.
//
// Generator: Philox4x32-10 from the Random123 family, versioned as
// "philox4x32-10/v1". A stream is addressed by (seed, stream_id); draw k of a
// stream is fully determined by those two values and k, so any language can
// replay it bit-exactly:
//
//   key     = { seed & 0xffffffff, seed >> 32 }
//   counter = { block & 0xffffffff, block >> 32,
//               stream_id & 0xffffffff, stream_id >> 32 }
//
// Each Philox block yields four 32-bit words x0..x3, consumed as two 64-bit
// values (x1 << 32 | x0) then (x3 << 32 | x2). Derived quantities:
//
//   uniform()      (u >> 11) * 2^-53                       in [0, 1)
//   normal()       Box-Muller on (1 - uniform(), uniform()), cos branch first
//   below(n)       rejection on u >= 2^64 - (2^64 mod n), then u mod n

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mompca {

inline constexpr const char* kRngName = "philox4x32-10/v1";

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

/// SplitMix64-style finalizer used to derive child seeds.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Fixed stream ids so independent consumers of one seed never share draws.
enum class Stream : std::uint64_t {
  Partition = 1,
  LowRankFactors = 2,
  OutlierRows = 3,
  OutlierNoise = 4,
  Gaussian = 5,
  Recovery = 6,
  EigenStart = 7,
  Rademacher = 8,
};

class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id);
  RandomStream(std::uint64_t seed, Stream stream)
      : RandomStream(seed, static_cast<std::uint64_t>(stream)) {}

  std::uint64_t next_u64();
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  std::uint64_t below(std::uint64_t n);
  /// +1 or -1 with equal probability (low bit of the next draw).
  int rademacher() { return (next_u64() & 1U) ? 1 : -1; }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  std::size_t buffered_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

/// Uniformly random permutation of 0..n-1 (Fisher-Yates, descending swaps).
std::vector<std::size_t> random_permutation(std::size_t n, RandomStream& rng);

}  // namespace mompca
