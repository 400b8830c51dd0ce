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

#include <doctest.h>

#include <cmath>

#include "../support/oracles.hpp"
#include "mompca/datagen.hpp"
#include "mompca/error.hpp"
#include "mompca/linalg.hpp"

using namespace mompca;

TEST_CASE("low-rank generator: rank, outlier count and untouched rows") {
  const SyntheticDataset ds = lowrank_with_outliers(200, 50, 5, 1);
  CHECK(ds.outlier_rows.size() == 14);
  CHECK(std::is_sorted(ds.outlier_rows.begin(), ds.outlier_rows.end()));
  const oracle::Eigen e = oracle::jacobi(oracle::scatter(ds.clean));
  std::size_t rank = 0;
  // Eigenvalues of X₀ᵀX₀ are squared singular values.
  for (const double v : e.values) rank += std::sqrt(std::max(v, 0.0)) > 1e-8 * std::sqrt(e.values[0]);
  CHECK(rank == 5);
  const auto labels = ds.outlier_labels();
  for (std::size_t i = 0; i < 200; ++i) {
    bool same = true;
    for (std::size_t j = 0; j < 50; ++j) same = same && ds.x(i, j) == ds.clean(i, j);
    CHECK(same == (labels[i] == 0));
  }
  CHECK(ds.inlier_rows().size() == 186);
}

TEST_CASE("low-rank generator: noise range, determinism and validation") {
  const SyntheticDataset a = lowrank_with_outliers(100, 20, 3, 9), b = lowrank_with_outliers(100, 20, 3, 9);
  CHECK(a.x == b.x);
  CHECK(!(a.x == lowrank_with_outliers(100, 20, 3, 10).x));
  for (const std::size_t i : a.outlier_rows)
    for (std::size_t j = 0; j < 20; ++j) CHECK(std::abs(a.x(i, j) - a.clean(i, j)) <= 500.0);
  CHECK(lowrank_with_outliers(100, 20, 3, 9, 0).outlier_rows.empty());
  CHECK_THROWS_AS(lowrank_with_outliers(10, 20, 10, 1), Error);
  CHECK_THROWS_AS(lowrank_with_outliers(10, 20, 0, 1), Error);
}

TEST_CASE("Gaussian generator moments") {
  const std::vector<double> var{4, 1, 0.25, 2, 9};
  const DataMatrix x = gaussian_inliers(100000, 5, var, 3);
  for (std::size_t j = 0; j < 5; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) s += x(i, j) * x(i, j);
    const double est = s / static_cast<double>(x.rows());
    // Standard error of a variance estimate is σ²√(2/n).
    CHECK(std::abs(est - var[j]) <= 5.0 * var[j] * std::sqrt(2.0 / 100000.0));
  }
  const DataMatrix flat = gaussian_inliers(100000, 5, std::vector<double>(5, 1.0), 4);
  const auto e = top_eigenvectors(scatter_matrix(flat), 5).values;
  CHECK(e.front() / e.back() < 1.3);
  CHECK(gaussian_inliers(10, 2, std::vector<double>{1, 1}, 1) == gaussian_inliers(10, 2, std::vector<double>{1, 1}, 1));
  CHECK_THROWS_AS(gaussian_inliers(10, 2, std::vector<double>{1, 0}, 1), Error);
  CHECK_THROWS_AS(gaussian_inliers(10, 2, std::vector<double>{1}, 1), Error);
}
