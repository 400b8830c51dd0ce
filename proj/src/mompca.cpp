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

#include "mompca/mompca.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <string>

#include "mompca/error.hpp"
#include "mompca/linalg.hpp"
#include "mompca/parallel.hpp"

namespace mompca {
namespace {

double block_residual_mean(const DataMatrix& x, std::span<const std::size_t> rows, const Basis& v) {
  double sum = 0.0;
  for (const std::size_t i : rows) sum += residual_value(v, x.row(i));
  return sum / static_cast<double>(rows.size());
}

// V + η (1/B) Σ xᵢ (xᵢᵀ V), accumulated row by row so the p x p block
// scatter is never formed.
Matrix ascent_point(const DataMatrix& x, std::span<const std::size_t> rows, const Basis& v, double eta) {
  const std::size_t p = v.dim_ambient();
  const std::size_t d = v.dim_sub();
  Matrix g(p, d);
  for (const std::size_t i : rows) {
    const auto xi = x.row(i);
    const std::vector<double> c = v.coordinates(xi);
    for (std::size_t a = 0; a < p; ++a) {
      const double xa = xi[a];
      auto grow = g.row(a);
      for (std::size_t k = 0; k < d; ++k) grow[k] += xa * c[k];
    }
  }
  const double scale = eta / static_cast<double>(rows.size());
  Matrix out = v.matrix();
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t k = 0; k < d; ++k) out(a, k) += scale * g(a, k);
  return out;
}

Basis step_on_block(const DataMatrix& x, std::span<const std::size_t> rows, const Basis& v,
                    double eta, RandomStream& recovery) {
  return detail::orthonormalize_with_recovery(ascent_point(x, rows, v, eta), recovery);
}

// Largest eigenvalue of (1/B) Σ xᵢxᵢᵀ over the block, via whichever of the
// p x p scatter or the B x B Gram matrix is smaller.
double block_top_eigenvalue(const DataMatrix& x, std::span<const std::size_t> rows) {
  const std::size_t p = x.cols();
  const std::size_t b = rows.size();
  SymmetricMatrix s;
  if (b < p) {
    s = SymmetricMatrix(b);
    for (std::size_t i = 0; i < b; ++i)
      for (std::size_t j = 0; j <= i; ++j) s.set(i, j, dot(x.row(rows[i]), x.row(rows[j])));
  } else {
    Matrix block(b, p);
    for (std::size_t i = 0; i < b; ++i) std::copy_n(x.row(rows[i]).begin(), p, block.row(i).begin());
    s = scatter_matrix(DataMatrix(std::move(block)));
  }
  return top_eigenvectors(s, 1).values.front() / static_cast<double>(b);
}

std::mutex audit_mutex;
OrthonormalityAudit audit_state;

void record_iterate(const Basis& v) {
  const double r = orthonormality_residual(v);
  const std::lock_guard lock(audit_mutex);
  ++audit_state.iterates;
  audit_state.worst = std::max(audit_state.worst, r);
}

}  // namespace

OrthonormalityAudit orthonormality_audit() {
  const std::lock_guard lock(audit_mutex);
  return audit_state;
}

void reset_orthonormality_audit() {
  const std::lock_guard lock(audit_mutex);
  audit_state = {};
}

PartitionPlan partition(std::size_t n, std::size_t block_count, std::uint64_t seed) {
  require(block_count >= 1 && block_count <= n, ErrorCode::InvalidBlockCount,
          "block count L = " + std::to_string(block_count) + " must satisfy 1 <= L <= N = " +
              std::to_string(n));
  RandomStream rng(seed, Stream::Partition);
  const std::vector<std::size_t> perm = random_permutation(n, rng);
  PartitionPlan plan;
  plan.observation_count = n;
  plan.block_size = n / block_count;
  plan.seed = seed;
  plan.blocks.resize(block_count);
  for (std::size_t l = 0; l < block_count; ++l)
    plan.blocks[l].assign(perm.begin() + static_cast<std::ptrdiff_t>(l * plan.block_size),
                          perm.begin() + static_cast<std::ptrdiff_t>((l + 1) * plan.block_size));
  plan.dropped.assign(perm.begin() + static_cast<std::ptrdiff_t>(block_count * plan.block_size),
                      perm.end());
  return plan;
}

MedianBlock median_block(std::span<const double> values) {
  require(!values.empty(), ErrorCode::InvalidInputs, "median of an empty set of blocks");
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  const std::size_t pick = order[(values.size() - 1) / 2];
  return {pick, values[pick]};
}

double block_objective(const DataMatrix& x, const PartitionPlan& plan, std::size_t block,
                       const Basis& v) {
  require(block < plan.block_count(), ErrorCode::InvalidInputs,
          "block index " + std::to_string(block) + " out of range");
  require(x.cols() == v.dim_ambient(), ErrorCode::DimensionMismatch,
          "data and basis ambient dimensions differ");
  return block_residual_mean(x, plan.blocks[block], v);
}

std::vector<double> block_objectives(const DataMatrix& x, const PartitionPlan& plan,
                                     const Basis& v) {
  require(x.cols() == v.dim_ambient(), ErrorCode::DimensionMismatch,
          "data and basis ambient dimensions differ");
  require(plan.observation_count == x.rows(), ErrorCode::DimensionMismatch,
          "partition was drawn for a different number of observations");
  std::vector<double> values(plan.block_count());
  parallel_for(values.size(),
               [&](std::size_t l) { values[l] = block_residual_mean(x, plan.blocks[l], v); });
  return values;
}

double mom_objective(const DataMatrix& x, const PartitionPlan& plan, const Basis& v) {
  return median_block(block_objectives(x, plan, v)).value;
}

Basis gradient_step(const DataMatrix& x, const PartitionPlan& plan, const Basis& v, double eta,
                    RandomStream& recovery) {
  const MedianBlock med = median_block(block_objectives(x, plan, v));
  return step_on_block(x, plan.blocks[med.index], v, eta, recovery);
}

Basis gradient_step(const DataMatrix& x, const PartitionPlan& plan, const Basis& v, double eta) {
  RandomStream recovery(plan.seed, Stream::Recovery);
  return gradient_step(x, plan, v, eta, recovery);
}

void validate(const FitConfig& config, std::size_t n, std::size_t p) {
  require(config.dim >= 1 && config.dim <= p, ErrorCode::InvalidConfig,
          "target dimension d = " + std::to_string(config.dim) + " must satisfy 1 <= d <= p = " +
              std::to_string(p));
  require(config.blocks >= 1 && config.blocks <= n, ErrorCode::InvalidBlockCount,
          "block count L = " + std::to_string(config.blocks) + " must satisfy 1 <= L <= N = " +
              std::to_string(n));
  if (config.eta)
    require(std::isfinite(*config.eta) && *config.eta > 0.0, ErrorCode::InvalidConfig,
            "step size eta must be positive");
  require(std::isfinite(config.tol) && config.tol > 0.0, ErrorCode::InvalidConfig,
          "tolerance must be positive");
  require(config.max_iter >= 1, ErrorCode::InvalidConfig, "max_iter must be at least 1");
}

MompcaModel::MompcaModel(Basis basis, CenterVector center, FitConfig config, FitReport report)
    : basis_(std::move(basis)), center_(std::move(center)), config_(config), report_(std::move(report)) {
  require(center_.size() == basis_.dim_ambient(), ErrorCode::DimensionMismatch,
          "model center and basis disagree on the feature count");
}

std::vector<double> MompcaModel::scores(std::span<const double> x) const {
  require(x.size() == center_.size(), ErrorCode::DimensionMismatch,
          "observation has " + std::to_string(x.size()) + " features, model expects " +
              std::to_string(center_.size()));
  std::vector<double> shifted(x.begin(), x.end());
  for (std::size_t j = 0; j < shifted.size(); ++j) shifted[j] -= center_[j];
  return basis_.coordinates(shifted);
}

std::vector<double> MompcaModel::reconstruction(std::span<const double> x) const {
  std::vector<double> out = basis_.combine(scores(x));
  for (std::size_t j = 0; j < out.size(); ++j) out[j] += center_[j];
  return out;
}

double default_step_size(const DataMatrix& centered, const PartitionPlan& plan, const Basis& initial) {
  const MedianBlock med = median_block(block_objectives(centered, plan, initial));
  const double top = block_top_eigenvalue(centered, plan.blocks[med.index]);
  return top > 0.0 ? 1.0 / top : 1.0;
}

MompcaModel fit(const DataMatrix& x, const FitConfig& config, const IterationObserver& observer) {
  validate(config, x.rows(), x.cols());
  const CenterVector mu =
      config.centering ? featurewise_median(x) : CenterVector(x.cols(), 0.0);
  const DataMatrix xc = center(x, mu);

  PartitionPlan plan = partition(x.rows(), config.blocks, config.seed);
  Basis v = top_eigenvectors(scatter_matrix(xc), config.dim).vectors;
  const double eta = config.eta ? *config.eta : default_step_size(xc, plan, v);
  RandomStream recovery(config.seed, Stream::Recovery);

  FitReport report;
  report.center = mu;
  report.eta = eta;
  report.best_objective = std::numeric_limits<double>::infinity();
  Basis best = v;

  for (std::size_t t = 0;; ++t) {
    record_iterate(v);
    if (observer) observer(t, v);
    const std::vector<double> values = block_objectives(xc, plan, v);
    const MedianBlock med = median_block(values);
    report.objective_trace.push_back(med.value);
    report.median_block_trace.push_back(med.index);
    if (med.value < report.best_objective) {
      report.best_objective = med.value;
      report.best_iteration = t;
      best = v;
    }
    report.iterations_run = t;
    if (t > 0) {
      const double previous = report.objective_trace[t - 1];
      if (std::abs(med.value - previous) <= config.tol * std::max(1.0, std::abs(previous))) {
        report.converged = true;
        break;
      }
    }
    if (t == config.max_iter) break;
    v = step_on_block(xc, plan.blocks[med.index], v, eta, recovery);
    if (config.repartition) plan = partition(x.rows(), config.blocks, derive_seed(config.seed, t + 1));
  }
  return MompcaModel(std::move(best), mu, config, std::move(report));
}

DataMatrix transform(const MompcaModel& model, const DataMatrix& x) {
  Matrix out(x.rows(), model.dim_sub());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const std::vector<double> s = model.scores(x.row(i));
    std::copy(s.begin(), s.end(), out.row(i).begin());
  }
  return DataMatrix(std::move(out));
}

DataMatrix reconstruct(const MompcaModel& model, const DataMatrix& x) {
  Matrix out(x.rows(), model.dim_ambient());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const std::vector<double> r = model.reconstruction(x.row(i));
    std::copy(r.begin(), r.end(), out.row(i).begin());
  }
  return DataMatrix(std::move(out));
}

}  // namespace mompca
