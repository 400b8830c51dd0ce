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

// Numerical evaluation of the uniform concentration bounds for MoM PCA.
//
// Function class: f_Q(x) = xᵀ(I - Q)x over rank-d orthogonal projectors Q.
//
// Exact empirical Rademacher supremum. For signs σ and sample Y,
//
//   sup_Q Σᵢ σᵢ f_Q(Yᵢ) = tr(M) - min_Q <M, Q>,   M = Σᵢ σᵢ YᵢYᵢᵀ.
//
// <M, Q> is linear in Q, and the convex hull of rank-d projectors is
// {0 ⪯ Q ⪯ I, tr Q = d}, whose minimum of a linear functional is attained at
// the projector onto the d eigenvectors of M with smallest eigenvalues (Ky Fan).
// Hence the supremum equals the sum of the p - d largest eigenvalues of M.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mompca/matrix.hpp"

namespace mompca {

/// √((p - d) μ₄ / m).
double rademacher_bound(std::size_t p, std::size_t d, double mu4, std::size_t m);

/// Exact sup over rank-d projectors of Σᵢ σᵢ f_Q(Yᵢ) for one sign vector.
double rademacher_supremum(const DataMatrix& y, std::size_t d, std::span<const int> signs);

struct RademacherEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t draws = 0;
};

/// Monte-Carlo mean of the exact per-draw supremum divided by m. Draw k uses
/// the stream (derive_seed(seed, k), Rademacher), so the result does not
/// depend on thread scheduling.
RademacherEstimate empirical_rademacher_complexity(const DataMatrix& y, std::size_t d,
                                                   std::size_t draws, std::uint64_t seed);

struct SampleMoments {
  double mu2 = 0.0;  // mean ||x||²
  double mu4 = 0.0;  // mean ||x||⁴
  std::size_t count = 0;
  bool inliers_only = false;
};

/// Moments over all rows, or over rows whose label is 0 when labels are given.
SampleMoments sample_moments(const DataMatrix& x,
                             std::optional<std::span<const std::uint8_t>> outlier_labels = std::nullopt);

struct BoundInputs {
  std::size_t p = 0;
  std::size_t d = 0;
  double mu2 = 0.0;
  double mu4 = 0.0;
  std::size_t n = 0;             // N
  std::size_t blocks = 0;        // L
  std::size_t n_outliers = 0;    // |O|
  std::size_t n_inliers = 0;     // |I|
  double eta_slack = 1.0;        // η in L > (2 + η)|O|
};

struct BoundReport {
  BoundInputs inputs;
  double rademacher_bound = 0.0;     // √((p-d) μ₄ / |I|)
  double c_of_p = 0.0;               // C(P), floored at 0
  bool c_of_p_clamped = false;       // raw C(P) was negative
  double c_const = 0.0;              // C
  double rate = 0.0;                 // max{√(L/N), √|I| / N}
  double deviation_bound = 0.0;      // C · rate
  double success_probability = 0.0;  // clamped to [0, 1]
};

/// Evaluates the deviation bound sup_Q |MoM(f_Q) - P f_Q| <= C · rate and its
/// success probability 1 - 2 exp(-2L (2/(4+η) - |O|/L)²).
///
///   C(P) = (μ₄ + 2μ₂²)(p-d) + (μ₂² - 1)(p-d)²
///   C    = 2 max{ √(8(4+η) C(P) / η), 16 √((p-d) μ₄) (4+η) / η }
///
/// Throws AssumptionViolated unless L > (2+η)|O| and N > L.
BoundReport deviation_bound(const BoundInputs& inputs);

/// Same formulas without the assumption checks; used by `bounds --force`.
BoundReport deviation_bound_unchecked(const BoundInputs& inputs);

}  // namespace mompca
