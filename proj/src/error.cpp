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

#include "mompca/error.hpp"

namespace mompca {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::InvalidBlockCount: return "InvalidBlockCount";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InvalidInputs: return "InvalidInputs";
    case ErrorCode::InvalidRank: return "InvalidRank";
    case ErrorCode::InvalidFraction: return "InvalidFraction";
    case ErrorCode::EmptyInlierSet: return "EmptyInlierSet";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::AssumptionViolated: return "AssumptionViolated";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace mompca
