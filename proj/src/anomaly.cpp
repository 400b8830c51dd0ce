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

#include "mompca/anomaly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mompca/error.hpp"
#include "mompca/linalg.hpp"
#include "mompca/parallel.hpp"

namespace mompca {

std::vector<double> anomaly_scores(const MompcaModel& model, const DataMatrix& x) {
  require(x.cols() == model.dim_ambient(), ErrorCode::DimensionMismatch,
          "data has " + std::to_string(x.cols()) + " features, model expects " +
              std::to_string(model.dim_ambient()));
  const CenterVector& mu = model.center();
  std::vector<double> scores(x.rows());
  parallel_for(x.rows(), [&](std::size_t i) {
    const auto row = x.row(i);
    std::vector<double> shifted(row.begin(), row.end());
    for (std::size_t j = 0; j < shifted.size(); ++j) shifted[j] -= mu[j];
    scores[i] = residual_value(model.basis(), shifted);
  });
  return scores;
}

std::size_t flagged_count(std::size_t n, double fraction) {
  const double target = fraction * static_cast<double>(n);
  const double k = std::ceil(target - 1e-9 * std::max(1.0, target));
  return std::min(n, static_cast<std::size_t>(std::max(0.0, k)));
}

AnomalyResult label_top_fraction(std::span<const double> scores, double fraction) {
  require(std::isfinite(fraction) && fraction > 0.0 && fraction < 1.0, ErrorCode::InvalidFraction,
          "outlier fraction o = " + std::to_string(fraction) + " must lie strictly between 0 and 1");
  require(!scores.empty(), ErrorCode::InvalidInputs, "no scores to label");
  const std::size_t n = scores.size();
  const std::size_t k = std::max<std::size_t>(1, flagged_count(n, fraction));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a > b;
  });

  AnomalyResult out;
  out.scores.assign(scores.begin(), scores.end());
  out.fraction = fraction;
  out.labels.assign(n, 0);
  for (std::size_t r = 0; r < k; ++r) out.labels[order[r]] = 1;
  out.threshold = scores[order[k - 1]];
  return out;
}

}  // namespace mompca
