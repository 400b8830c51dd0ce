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

// JSON documents written by the library. Every document carries "format" and
// "version" keys; readers reject unknown formats and newer versions.

#include <filesystem>

#include <json.hpp>

#include "mompca/anomaly.hpp"
#include "mompca/bounds.hpp"
#include "mompca/metrics.hpp"
#include "mompca/mompca.hpp"

namespace mompca {

inline constexpr int kModelFormatVersion = 1;

nlohmann::json to_json(const FitReport& report);
nlohmann::json to_json(const MompcaModel& model);
nlohmann::json to_json(const BoundReport& report);
nlohmann::json to_json(const ClassificationScores& scores);
nlohmann::json to_json(const SampleMoments& moments);

/// Rebuilds a model. The basis (column-major in the document) must pass the
/// orthonormality check; shape errors raise ParseError.
MompcaModel model_from_json(const nlohmann::json& doc);

void save_model(const std::filesystem::path& path, const MompcaModel& model);
MompcaModel load_model(const std::filesystem::path& path);

/// Two-space indented JSON with a trailing newline.
std::string dump_json(const nlohmann::json& doc);

}  // namespace mompca
