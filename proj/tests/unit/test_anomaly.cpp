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

#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"
#include "mompca/anomaly.hpp"
#include "mompca/datagen.hpp"
#include "mompca/error.hpp"
#include "mompca/linalg.hpp"
#include "mompca/metrics.hpp"

using namespace mompca;

namespace {

std::size_t count(const std::vector<std::uint8_t>& labels) {
  std::size_t c = 0;
  for (auto l : labels) c += l;
  return c;
}

MompcaModel fitted(const DataMatrix& x, std::size_t d, std::size_t blocks) {
  FitConfig c;
  c.dim = d;
  c.blocks = blocks;
  c.seed = 1;
  return fit(x, c);
}

}  // namespace

TEST_CASE("label_top_fraction picks the largest scores") {
  std::vector<double> scores(10);
  for (int i = 0; i < 10; ++i) scores[i] = i;
  const AnomalyResult r = label_top_fraction(scores, 0.2);
  CHECK(r.labels == std::vector<std::uint8_t>{0, 0, 0, 0, 0, 0, 0, 0, 1, 1});
  CHECK(r.threshold == 8.0);
  CHECK(r.fraction == 0.2);
}

TEST_CASE("ties go to the higher index") {
  const AnomalyResult r = label_top_fraction(std::vector<double>(10, 1.0), 0.2);
  CHECK(r.labels == std::vector<std::uint8_t>{0, 0, 0, 0, 0, 0, 0, 0, 1, 1});
  const AnomalyResult s = label_top_fraction(std::vector<double>{5, 3, 3, 3, 1}, 0.4);
  CHECK(s.labels == std::vector<std::uint8_t>{1, 0, 0, 1, 0});
}

TEST_CASE("count is exactly ceil(o N) and grows monotonically in o") {
  RandomStream rng(4, 77);
  for (std::size_t n : {1u, 2u, 7u, 10u, 33u, 100u, 999u}) {
    std::vector<double> scores(n);
    for (double& s : scores) s = std::floor(rng.uniform() * 5.0);  // plenty of ties
    std::vector<std::uint8_t> previous(n, 0);
    for (double o : {0.01, 0.05, 0.07, 0.1, 0.25, 0.5, 0.9, 0.99}) {
      const AnomalyResult r = label_top_fraction(scores, o);
      const auto expected = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(o * n - 1e-9)));
      CHECK(count(r.labels) == expected);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(r.labels[i] >= previous[i]);
        if (r.labels[i]) CHECK(scores[i] >= r.threshold);
        else CHECK(scores[i] <= r.threshold);
      }
      previous = r.labels;
    }
  }
  CHECK(flagged_count(100, 0.07) == 7);
  CHECK(flagged_count(100, 0.071) == 8);
}

TEST_CASE("fraction outside (0, 1) is rejected") {
  const std::vector<double> s{1, 2, 3};
  for (double o : {0.0, 1.0, -0.5, 1.5}) {
    try {
      label_top_fraction(s, o);
      FAIL("expected InvalidFraction");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidFraction);
    }
  }
}

TEST_CASE("scores match the dense projector oracle and ignore rotations of V") {
  const DataMatrix x = fixture::gaussian_data(200, 6, 3);
  const MompcaModel m = fitted(x, 2, 10);
  const auto scores = anomaly_scores(m, x);
  const oracle::Dense v = oracle::from(m.basis());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    std::vector<double> shifted(6);
    for (std::size_t j = 0; j < 6; ++j) shifted[j] = x(i, j) - m.center()[j];
    CHECK(std::abs(scores[i] - oracle::residual(v, shifted)) <= 1e-8);
  }
  CHECK(anomaly_scores(m, DataMatrix(Matrix(1, 6, 0.0)))[0] >= 0.0);
  Matrix at_center(1, 6);
  for (std::size_t j = 0; j < 6; ++j) at_center(0, j) = m.center()[j];
  CHECK(anomaly_scores(m, DataMatrix(at_center))[0] == 0.0);

  // Rotate V inside its span.
  const double c = std::cos(0.7), s = std::sin(0.7);
  Matrix rotated(6, 2);
  for (std::size_t i = 0; i < 6; ++i) {
    rotated(i, 0) = c * m.basis()(i, 0) - s * m.basis()(i, 1);
    rotated(i, 1) = s * m.basis()(i, 0) + c * m.basis()(i, 1);
  }
  const MompcaModel r(Basis::from_orthonormal(rotated), m.center(), m.config(), m.report());
  const auto rs = anomaly_scores(r, x);
  for (std::size_t i = 0; i < x.rows(); ++i) CHECK(std::abs(rs[i] - scores[i]) <= 1e-9);
  CHECK_THROWS_AS(anomaly_scores(m, fixture::gaussian_data(3, 5, 1)), Error);
}

TEST_CASE("separable case: rank-3 inliers with off-subspace outliers") {
  // 950 inliers in a rank-3 subspace of ℝ²⁰, 50 outliers pushed off it.
  const std::size_t p = 20;
  const Basis span = fixture::random_basis(p, 3, 8);
  RandomStream rng(8, 900);
  Matrix m(1000, p);
  std::vector<std::uint8_t> truth(1000, 0);
  for (std::size_t i = 0; i < 1000; ++i) {
    std::vector<double> c{3 * rng.normal(), 2 * rng.normal(), rng.normal()};
    auto row = span.combine(c);
    if (i % 20 == 7) {
      truth[i] = 1;
      for (double& v : row) v += 8.0 * rng.normal();
    }
    std::copy(row.begin(), row.end(), m.row(i).begin());
  }
  const DataMatrix x(m);
  const MompcaModel model = fitted(x, 3, 60);
  const AnomalyResult r = label_top_fraction(anomaly_scores(model, x), 0.05);
  CHECK(precision_recall_f1(r.labels, truth).f1 >= 0.95);
}
