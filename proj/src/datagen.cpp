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

#include "mompca/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mompca/error.hpp"
#include "mompca/random.hpp"

namespace mompca {

std::vector<std::size_t> SyntheticDataset::inlier_rows() const {
  std::vector<std::size_t> rows;
  rows.reserve(x.rows() - outlier_rows.size());
  std::size_t next = 0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    if (next < outlier_rows.size() && outlier_rows[next] == i) {
      ++next;
      continue;
    }
    rows.push_back(i);
  }
  return rows;
}

std::vector<std::uint8_t> SyntheticDataset::outlier_labels() const {
  std::vector<std::uint8_t> labels(x.rows(), 0);
  for (const std::size_t i : outlier_rows) labels[i] = 1;
  return labels;
}

SyntheticDataset lowrank_with_outliers(std::size_t n, std::size_t p, std::size_t r,
                                       std::uint64_t seed, std::optional<std::size_t> outlier_count) {
  require(r >= 1 && r < std::min(n, p), ErrorCode::InvalidRank,
          "rank r = " + std::to_string(r) + " must satisfy 1 <= r < min(n, p) = " +
              std::to_string(std::min(n, p)));
  const std::size_t k =
      outlier_count.value_or(static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n)))));
  require(k <= n, ErrorCode::InvalidInputs, "more outlier rows than observations");

  RandomStream factors(seed, Stream::LowRankFactors);
  Matrix a(n, r);
  Matrix b(r, p);
  for (double& v : a.values()) v = factors.normal();
  for (double& v : b.values()) v = factors.normal();
  Matrix clean = multiply(a, b);

  // Partial Fisher-Yates: the first k slots are a uniform k-subset.
  RandomStream picker(seed, Stream::OutlierRows);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(picker.below(n - i));
    std::swap(order[i], order[j]);
  }
  std::vector<std::size_t> outliers(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(outliers.begin(), outliers.end());

  Matrix corrupted = clean;
  RandomStream noise(seed, Stream::OutlierNoise);
  for (const std::size_t i : outliers)
    for (double& v : corrupted.row(i)) v += noise.uniform(-500.0, 500.0);

  return {DataMatrix(std::move(corrupted)), DataMatrix(std::move(clean)), std::move(outliers), r, seed};
}

DataMatrix gaussian_inliers(std::size_t n, std::size_t p, std::span<const double> variances,
                            std::uint64_t seed) {
  require(n >= 1 && p >= 1, ErrorCode::InvalidInputs, "need n >= 1 and p >= 1");
  require(variances.size() == p, ErrorCode::InvalidInputs, "need one variance per feature");
  for (const double v : variances)
    require(std::isfinite(v) && v > 0.0, ErrorCode::InvalidInputs, "variances must be positive");
  std::vector<double> scale(p);
  for (std::size_t j = 0; j < p; ++j) scale[j] = std::sqrt(variances[j]);
  RandomStream rng(seed, Stream::Gaussian);
  Matrix m(n, p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) m(i, j) = scale[j] * rng.normal();
  return DataMatrix(std::move(m));
}

}  // namespace mompca
