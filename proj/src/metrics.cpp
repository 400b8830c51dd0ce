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

#include "mompca/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mompca/error.hpp"
#include "mompca/linalg.hpp"

namespace mompca {

double relative_reconstruction_error(const DataMatrix& recon, const DataMatrix& clean,
                                     std::span<const std::size_t> inlier_rows) {
  require(recon.rows() == clean.rows() && recon.cols() == clean.cols(),
          ErrorCode::DimensionMismatch, "reconstruction and ground truth differ in shape");
  require(!inlier_rows.empty(), ErrorCode::EmptyInlierSet, "no inlier rows to evaluate");
  double num = 0.0;
  double den = 0.0;
  for (const std::size_t i : inlier_rows) {
    require(i < clean.rows(), ErrorCode::InvalidInputs, "inlier row index out of range");
    const auto r = recon.row(i);
    const auto c = clean.row(i);
    for (std::size_t j = 0; j < c.size(); ++j) {
      num += (r[j] - c[j]) * (r[j] - c[j]);
      den += c[j] * c[j];
    }
  }
  require(den > 0.0, ErrorCode::InvalidInputs, "ground truth is zero on the inlier rows");
  return std::sqrt(num / den);
}

SubspaceDistance subspace_distance(const Basis& a, const Basis& b) {
  const PrincipalAngles angles = principal_angles(a, b);
  double sum = 0.0;
  for (const double s : angles.sines) sum += s * s;
  return {std::sqrt(2.0 * sum), *std::max_element(angles.angles.begin(), angles.angles.end())};
}

ClassificationScores precision_recall_f1(std::span<const std::uint8_t> predicted,
                                         std::span<const std::uint8_t> truth) {
  require(predicted.size() == truth.size(), ErrorCode::LengthMismatch,
          "predicted has " + std::to_string(predicted.size()) + " labels, truth has " +
              std::to_string(truth.size()));
  ClassificationScores s;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool p = predicted[i] != 0;
    const bool t = truth[i] != 0;
    if (p && t) ++s.true_positives;
    if (p && !t) ++s.false_positives;
    if (!p && t) ++s.false_negatives;
  }
  const auto tp = static_cast<double>(s.true_positives);
  const std::size_t predicted_pos = s.true_positives + s.false_positives;
  const std::size_t actual_pos = s.true_positives + s.false_negatives;
  if (predicted_pos == 0) s.precision_undefined = true;
  else s.precision = tp / static_cast<double>(predicted_pos);
  if (actual_pos == 0) s.recall_undefined = true;
  else s.recall = tp / static_cast<double>(actual_pos);
  if (s.precision + s.recall == 0.0) s.f1_undefined = true;
  else s.f1 = 2.0 * s.precision * s.recall / (s.precision + s.recall);
  return s;
}

}  // namespace mompca
