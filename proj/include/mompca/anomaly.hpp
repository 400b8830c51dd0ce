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
#include <span>
#include <vector>

#include "mompca/matrix.hpp"
#include "mompca/mompca.hpp"

namespace mompca {

struct AnomalyResult {
  std::vector<double> scores;
  double threshold = 0.0;
  std::vector<std::uint8_t> labels;  // 1 = flagged as outlier
  double fraction = 0.0;
};

/// Squared distance of each row to the fitted affine subspace:
/// ||(I - VVᵀ)(xᵢ - μ)||², with μ the model's training center.
std::vector<double> anomaly_scores(const MompcaModel& model, const DataMatrix& x);

/// Flags exactly k = ⌈o·N⌉ rows, the k largest scores. Equal scores are
/// ordered by descending row index, so among ties the later row is flagged
/// first. `threshold` is the k-th largest score.
AnomalyResult label_top_fraction(std::span<const double> scores, double fraction);

/// ⌈o·N⌉ with a small allowance for o·N landing a rounding error above an
/// integer (0.07 * 100 is 7.000000000000001 in binary floating point).
std::size_t flagged_count(std::size_t n, double fraction);

}  // namespace mompca
