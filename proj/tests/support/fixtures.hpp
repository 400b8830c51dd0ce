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

#include <cstdint>
#include <vector>

#include "mompca/linalg.hpp"
#include "mompca/matrix.hpp"
#include "mompca/random.hpp"

namespace fixture {

inline mompca::Matrix gaussian(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  mompca::RandomStream rng(seed, 1000);
  mompca::Matrix m(rows, cols);
  for (double& v : m.values()) v = rng.normal();
  return m;
}

inline mompca::DataMatrix gaussian_data(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  return mompca::DataMatrix(gaussian(rows, cols, seed));
}

inline mompca::Basis random_basis(std::size_t p, std::size_t d, std::uint64_t seed) {
  return mompca::gram_schmidt_orthonormalize(gaussian(p, d, seed));
}

inline std::vector<double> gaussian_vector(std::size_t n, std::uint64_t seed) {
  mompca::RandomStream rng(seed, 1001);
  std::vector<double> v(n);
  for (double& x : v) x = rng.normal();
  return v;
}

}  // namespace fixture
