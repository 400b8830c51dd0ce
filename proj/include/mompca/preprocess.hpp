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

#include <vector>

#include "mompca/matrix.hpp"

namespace mompca {

/// Feature-wise median. For even N the lower middle order statistic is used,
/// so every coordinate is an actual data value.
using CenterVector = std::vector<double>;

CenterVector featurewise_median(const DataMatrix& x);

/// Row i becomes xᵢ - center.
DataMatrix center(const DataMatrix& x, const CenterVector& center);

}  // namespace mompca
