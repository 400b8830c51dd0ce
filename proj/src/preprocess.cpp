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

#include "mompca/preprocess.hpp"

#include <algorithm>
#include <string>

#include "mompca/error.hpp"

namespace mompca {

CenterVector featurewise_median(const DataMatrix& x) {
  const std::size_t n = x.rows();
  const std::size_t rank = (n - 1) / 2;
  CenterVector mu(x.cols());
  std::vector<double> column(n);
  for (std::size_t j = 0; j < x.cols(); ++j) {
    for (std::size_t i = 0; i < n; ++i) column[i] = x(i, j);
    std::nth_element(column.begin(), column.begin() + static_cast<std::ptrdiff_t>(rank), column.end());
    mu[j] = column[rank];
  }
  return mu;
}

DataMatrix center(const DataMatrix& x, const CenterVector& mu) {
  require(mu.size() == x.cols(), ErrorCode::DimensionMismatch,
          "center has " + std::to_string(mu.size()) + " entries, data has " +
              std::to_string(x.cols()) + " features");
  Matrix out = x.matrix();
  for (std::size_t i = 0; i < out.rows(); ++i) {
    auto row = out.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) row[j] -= mu[j];
  }
  return DataMatrix(std::move(out));
}

}  // namespace mompca
