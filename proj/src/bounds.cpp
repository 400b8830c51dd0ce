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

#include "mompca/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mompca/error.hpp"
#include "mompca/linalg.hpp"
#include "mompca/parallel.hpp"
#include "mompca/random.hpp"

namespace mompca {

double rademacher_bound(std::size_t p, std::size_t d, double mu4, std::size_t m) {
  require(d <= p, ErrorCode::InvalidInputs, "rademacher_bound needs d <= p");
  require(std::isfinite(mu4) && mu4 >= 0.0, ErrorCode::InvalidInputs,
          "rademacher_bound needs a finite, non-negative fourth moment");
  require(m >= 1, ErrorCode::InvalidInputs, "rademacher_bound needs m >= 1");
  return std::sqrt(static_cast<double>(p - d) * mu4 / static_cast<double>(m));
}

double rademacher_supremum(const DataMatrix& y, std::size_t d, std::span<const int> signs) {
  const std::size_t p = y.cols();
  require(d >= 1 && d <= p, ErrorCode::InvalidInputs, "subspace dimension must satisfy 1 <= d <= p");
  require(signs.size() == y.rows(), ErrorCode::LengthMismatch, "one sign per observation is required");
  if (d == p) return 0.0;
  Matrix m(p, p);
  for (std::size_t i = 0; i < y.rows(); ++i) {
    const auto yi = y.row(i);
    const double s = signs[i];
    for (std::size_t a = 0; a < p; ++a)
      for (std::size_t b = 0; b <= a; ++b) m(a, b) += s * yi[a] * yi[b];
  }
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b < a; ++b) m(b, a) = m(a, b);
  const std::vector<double> eig = detail::jacobi_eigen(std::move(m)).values;
  double sum = 0.0;
  for (std::size_t k = 0; k < p - d; ++k) sum += eig[k];
  return sum;
}

RademacherEstimate empirical_rademacher_complexity(const DataMatrix& y, std::size_t d,
                                                   std::size_t draws, std::uint64_t seed) {
  require(draws >= 1, ErrorCode::InvalidInputs, "at least one Rademacher draw is required");
  const std::size_t m = y.rows();
  std::vector<double> values(draws);
  parallel_for(draws, [&](std::size_t k) {
    RandomStream rng(derive_seed(seed, k), Stream::Rademacher);
    std::vector<int> signs(m);
    for (int& s : signs) s = rng.rademacher();
    values[k] = rademacher_supremum(y, d, signs) / static_cast<double>(m);
  });

  RademacherEstimate out;
  out.draws = draws;
  double mean = 0.0;
  for (const double v : values) mean += v;
  mean /= static_cast<double>(draws);
  out.estimate = mean;
  if (draws > 1) {
    double ss = 0.0;
    for (const double v : values) ss += (v - mean) * (v - mean);
    out.std_error = std::sqrt(ss / static_cast<double>(draws - 1) / static_cast<double>(draws));
  }
  return out;
}

SampleMoments sample_moments(const DataMatrix& x,
                             std::optional<std::span<const std::uint8_t>> outlier_labels) {
  if (outlier_labels)
    require(outlier_labels->size() == x.rows(), ErrorCode::LengthMismatch,
            "label count differs from the number of rows");
  SampleMoments out;
  out.inliers_only = outlier_labels.has_value();
  double s2 = 0.0;
  double s4 = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    if (outlier_labels && (*outlier_labels)[i] != 0) continue;
    const double q = squared_norm(x.row(i));
    s2 += q;
    s4 += q * q;
    ++out.count;
  }
  require(out.count > 0, ErrorCode::EmptyInlierSet, "no rows left to estimate moments from");
  out.mu2 = s2 / static_cast<double>(out.count);
  out.mu4 = s4 / static_cast<double>(out.count);
  return out;
}

BoundReport deviation_bound_unchecked(const BoundInputs& in) {
  require(in.d <= in.p, ErrorCode::InvalidInputs, "deviation_bound needs d <= p");
  require(in.n >= 1 && in.blocks >= 1, ErrorCode::InvalidInputs, "N and L must be positive");
  require(in.n_inliers >= 1, ErrorCode::InvalidInputs, "at least one inlier is required");
  require(std::isfinite(in.eta_slack) && in.eta_slack > 0.0, ErrorCode::InvalidInputs,
          "eta slack must be positive");
  require(std::isfinite(in.mu2) && in.mu2 >= 0.0 && std::isfinite(in.mu4) && in.mu4 >= 0.0,
          ErrorCode::InvalidInputs, "moments must be finite and non-negative");

  BoundReport r;
  r.inputs = in;
  const double q = static_cast<double>(in.p - in.d);
  const double eta = in.eta_slack;
  const double n = static_cast<double>(in.n);
  const double l = static_cast<double>(in.blocks);

  r.rademacher_bound = rademacher_bound(in.p, in.d, in.mu4, in.n_inliers);

  const double raw_c_of_p = (in.mu4 + 2.0 * in.mu2 * in.mu2) * q + (in.mu2 * in.mu2 - 1.0) * q * q;
  r.c_of_p_clamped = raw_c_of_p < 0.0;
  r.c_of_p = std::max(0.0, raw_c_of_p);

  const double first = std::sqrt(8.0 * (4.0 + eta) * r.c_of_p / eta);
  const double second = 16.0 * std::sqrt(q * in.mu4) * (4.0 + eta) / eta;
  r.c_const = 2.0 * std::max(first, second);

  r.rate = std::max(std::sqrt(l / n), std::sqrt(static_cast<double>(in.n_inliers)) / n);
  r.deviation_bound = r.c_const * r.rate;

  const double gap = 2.0 / (4.0 + eta) - static_cast<double>(in.n_outliers) / l;
  r.success_probability = std::clamp(1.0 - 2.0 * std::exp(-2.0 * l * gap * gap), 0.0, 1.0);
  return r;
}

BoundReport deviation_bound(const BoundInputs& in) {
  const double needed = (2.0 + in.eta_slack) * static_cast<double>(in.n_outliers);
  require(static_cast<double>(in.blocks) > needed, ErrorCode::AssumptionViolated,
          "block-majority condition L > (2+eta)*n_outliers fails: L = " + std::to_string(in.blocks) +
              ", (2+eta)*n_outliers = " + std::to_string(needed));
  require(in.n > in.blocks, ErrorCode::AssumptionViolated,
          "sample-size condition N > L fails: N = " + std::to_string(in.n) +
              ", L = " + std::to_string(in.blocks));
  return deviation_bound_unchecked(in);
}

}  // namespace mompca
