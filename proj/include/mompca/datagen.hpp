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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mompca/matrix.hpp"

namespace mompca {

struct SyntheticDataset {
  DataMatrix x;                            // corrupted observations
  DataMatrix clean;                        // low-rank ground truth X₀
  std::vector<std::size_t> outlier_rows;   // ascending
  std::size_t rank = 0;
  std::uint64_t seed = 0;

  std::vector<std::size_t> inlier_rows() const;
  /// 1 for corrupted rows, 0 otherwise.
  std::vector<std::uint8_t> outlier_labels() const;
};

/// X₀ = A·B with A (n x r) and B (r x p) standard normal, drawn row-major from
/// the LowRankFactors stream (all of A, then all of B). ⌊√n⌋ distinct rows
/// (or `outlier_count` when given) receive i.i.d. Unif(-500, 500) noise added
/// entrywise.
SyntheticDataset lowrank_with_outliers(std::size_t n, std::size_t p, std::size_t r,
                                       std::uint64_t seed,
                                       std::optional<std::size_t> outlier_count = std::nullopt);

/// Rows i.i.d. N(0, diag(variances)).
DataMatrix gaussian_inliers(std::size_t n, std::size_t p, std::span<const double> variances,
                            std::uint64_t seed);

}  // namespace mompca
