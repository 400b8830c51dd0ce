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

// Median-of-means PCA.
//
// The sample is split once into L equal blocks. For a basis V the per-block
// mean residual P_B g_V = (1/B) Σ_{i∈B} xᵢᵀ(I - VVᵀ)xᵢ is computed for every
// block and the lower median over blocks is the objective. Each iteration
// takes a step using only the median block:
//
//   V ← orth(V + η S_med V),   S_med = (1/B) Σ_{i∈B_med} xᵢxᵢᵀ
//
// The plus sign is deliberate. Minimizing xᵀ(I - VVᵀ)x over orthonormal V is
// maximizing ||Vᵀx||², whose ascent direction is +S V; subtracting it would
// steer V toward the minor eigenvectors of the block. The factor 2 of the
// gradient is folded into η.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "mompca/matrix.hpp"
#include "mompca/preprocess.hpp"
#include "mompca/random.hpp"

namespace mompca {

/// Seeded split of 0..N-1 into L disjoint blocks of exactly ⌊N/L⌋ indices.
/// The N mod L leftover indices of the permutation are dropped.
struct PartitionPlan {
  std::size_t observation_count = 0;
  std::size_t block_size = 0;
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::size_t> dropped;
  std::uint64_t seed = 0;

  std::size_t block_count() const noexcept { return blocks.size(); }
};

PartitionPlan partition(std::size_t n, std::size_t block_count, std::uint64_t seed);

struct MedianBlock {
  std::size_t index = 0;  // zero-based block index
  double value = 0.0;
};

/// Lower median of the block values: rank ⌊(L-1)/2⌋ of a stable ascending
/// sort, so ties go to the lowest block index.
MedianBlock median_block(std::span<const double> values);

/// Mean residual of the observations in one block.
double block_objective(const DataMatrix& x, const PartitionPlan& plan, std::size_t block,
                       const Basis& v);
/// Every block's mean residual, in block order.
std::vector<double> block_objectives(const DataMatrix& x, const PartitionPlan& plan,
                                     const Basis& v);
/// Median over blocks of the mean residual.
double mom_objective(const DataMatrix& x, const PartitionPlan& plan, const Basis& v);

/// One median-block step. The median block is chosen at the current V.
/// Collapsed columns are re-drawn once from `recovery` before giving up.
Basis gradient_step(const DataMatrix& x, const PartitionPlan& plan, const Basis& v, double eta,
                    RandomStream& recovery);
Basis gradient_step(const DataMatrix& x, const PartitionPlan& plan, const Basis& v, double eta);

struct FitConfig {
  std::size_t dim = 1;                 // d
  std::size_t blocks = 1;              // L
  std::optional<double> eta;           // step size; see default_step_size
  double tol = 1e-7;                   // relative objective change
  std::size_t max_iter = 500;
  std::uint64_t seed = 0;
  bool centering = true;               // subtract the feature-wise median first
  bool repartition = false;            // redraw blocks every iteration
};

/// Throws InvalidConfig / InvalidBlockCount for settings that cannot apply to
/// an n x p sample.
void validate(const FitConfig& config, std::size_t n, std::size_t p);

struct FitReport {
  std::size_t iterations_run = 0;
  std::vector<double> objective_trace;            // iterations_run + 1 entries
  std::vector<std::size_t> median_block_trace;    // same length
  bool converged = false;
  CenterVector center;
  std::size_t best_iteration = 0;
  double best_objective = 0.0;
  double eta = 0.0;                               // step size actually used
};

class MompcaModel {
 public:
  MompcaModel(Basis basis, CenterVector center, FitConfig config, FitReport report);

  const Basis& basis() const noexcept { return basis_; }
  const CenterVector& center() const noexcept { return center_; }
  const FitConfig& config() const noexcept { return config_; }
  const FitReport& report() const noexcept { return report_; }
  std::size_t dim_ambient() const noexcept { return basis_.dim_ambient(); }
  std::size_t dim_sub() const noexcept { return basis_.dim_sub(); }

  /// Vᵀ(x - μ) for one observation.
  std::vector<double> scores(std::span<const double> x) const;
  /// V·Vᵀ(x - μ) + μ for one observation.
  std::vector<double> reconstruction(std::span<const double> x) const;

 private:
  Basis basis_;
  CenterVector center_;
  FitConfig config_;
  FitReport report_;
};

/// Called with (iteration, V) for every iterate the fit evaluates.
using IterationObserver = std::function<void(std::size_t, const Basis&)>;

/// The step size used when FitConfig::eta is empty: 1 / λ₁(S_med⁽⁰⁾), the
/// reciprocal top eigenvalue of the median block's scatter at the initial
/// basis. Scale-free, and blind to blocks holding outliers.
double default_step_size(const DataMatrix& centered, const PartitionPlan& plan, const Basis& initial);

MompcaModel fit(const DataMatrix& x, const FitConfig& config,
                const IterationObserver& observer = {});

/// Process-wide record of ||VᵀV - I||_F over every iterate any fit has
/// evaluated since the last reset. Cheap next to a gradient step, so it is
/// always on, release builds included.
struct OrthonormalityAudit {
  std::size_t iterates = 0;
  double worst = 0.0;
};
OrthonormalityAudit orthonormality_audit();
void reset_orthonormality_audit();

/// N x d scores.
DataMatrix transform(const MompcaModel& model, const DataMatrix& x);
/// N x p reconstructions in the original coordinates.
DataMatrix reconstruct(const MompcaModel& model, const DataMatrix& x);

}  // namespace mompca
