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

namespace mompca {

using Labels = std::vector<std::uint8_t>;

/// ||recon - clean||_F / ||clean||_F over the listed rows only.
double relative_reconstruction_error(const DataMatrix& recon, const DataMatrix& clean,
                                     std::span<const std::size_t> inlier_rows);

struct SubspaceDistance {
  double projector_frobenius = 0.0;  // ||V₁V₁ᵀ - V₂V₂ᵀ||_F
  double max_principal_angle = 0.0;  // radians
};

/// ||Q₁ - Q₂||_F² = 2 Σ sin²θₖ, so both fields come from the principal angles.
SubspaceDistance subspace_distance(const Basis& a, const Basis& b);

struct ClassificationScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  // Set when the metric's denominator was zero and the value defaulted to 0.
  bool precision_undefined = false;
  bool recall_undefined = false;
  bool f1_undefined = false;
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
};

ClassificationScores precision_recall_f1(std::span<const std::uint8_t> predicted,
                                         std::span<const std::uint8_t> truth);

}  // namespace mompca
