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

#include "mompca/model_io.hpp"

#include <string>

#include "mompca/error.hpp"
#include "mompca/io.hpp"

namespace mompca {

using nlohmann::json;

json to_json(const FitReport& report) {
  return {
      {"iterations_run", report.iterations_run},
      {"converged", report.converged},
      {"best_iteration", report.best_iteration},
      {"best_objective", report.best_objective},
      {"eta", report.eta},
      {"objective_trace", report.objective_trace},
      {"median_block_trace", report.median_block_trace},
  };
}

json to_json(const MompcaModel& model) {
  const Basis& v = model.basis();
  std::vector<double> column_major;
  column_major.reserve(v.dim_ambient() * v.dim_sub());
  for (std::size_t k = 0; k < v.dim_sub(); ++k)
    for (std::size_t i = 0; i < v.dim_ambient(); ++i) column_major.push_back(v(i, k));
  const FitConfig& c = model.config();
  return {
      {"format", "mompca-model"},
      {"version", kModelFormatVersion},
      {"p", v.dim_ambient()},
      {"d", v.dim_sub()},
      {"L", c.blocks},
      {"seed", c.seed},
      {"eta", model.report().eta},
      {"tol", c.tol},
      {"max_iter", c.max_iter},
      {"centering", c.centering},
      {"repartition", c.repartition},
      {"center", model.center()},
      {"basis", column_major},
      {"report", to_json(model.report())},
  };
}

json to_json(const BoundReport& r) {
  const BoundInputs& in = r.inputs;
  return {
      {"format", "mompca-bounds"},
      {"version", 1},
      {"inputs",
       {{"p", in.p},
        {"d", in.d},
        {"mu2", in.mu2},
        {"mu4", in.mu4},
        {"N", in.n},
        {"L", in.blocks},
        {"n_outliers", in.n_outliers},
        {"n_inliers", in.n_inliers},
        {"eta_slack", in.eta_slack}}},
      {"rademacher_bound", r.rademacher_bound},
      {"c_of_p", r.c_of_p},
      {"c_of_p_clamped", r.c_of_p_clamped},
      {"c_const", r.c_const},
      {"rate", r.rate},
      {"deviation_bound", r.deviation_bound},
      {"success_probability", r.success_probability},
  };
}

json to_json(const ClassificationScores& s) {
  return {
      {"precision", s.precision},
      {"recall", s.recall},
      {"f1", s.f1},
      {"precision_undefined", s.precision_undefined},
      {"recall_undefined", s.recall_undefined},
      {"f1_undefined", s.f1_undefined},
      {"true_positives", s.true_positives},
      {"false_positives", s.false_positives},
      {"false_negatives", s.false_negatives},
  };
}

json to_json(const SampleMoments& m) {
  return {{"mu2", m.mu2}, {"mu4", m.mu4}, {"count", m.count}, {"inliers_only", m.inliers_only}};
}

MompcaModel model_from_json(const json& doc) {
  try {
    require(doc.value("format", std::string{}) == "mompca-model", ErrorCode::ParseError,
            "not a model document");
    const int version = doc.at("version").get<int>();
    require(version >= 1 && version <= kModelFormatVersion, ErrorCode::ParseError,
            "unsupported model version " + std::to_string(version));
    const auto p = doc.at("p").get<std::size_t>();
    const auto d = doc.at("d").get<std::size_t>();
    const auto center = doc.at("center").get<std::vector<double>>();
    const auto basis = doc.at("basis").get<std::vector<double>>();
    require(p >= 1 && d >= 1 && d <= p, ErrorCode::ParseError, "model has invalid dimensions");
    require(center.size() == p, ErrorCode::ParseError, "center length differs from p");
    require(basis.size() == p * d, ErrorCode::ParseError, "basis length differs from p*d");

    Matrix v(p, d);
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t i = 0; i < p; ++i) v(i, k) = basis[k * p + i];

    FitConfig config;
    config.dim = d;
    config.blocks = doc.at("L").get<std::size_t>();
    config.seed = doc.at("seed").get<std::uint64_t>();
    config.eta = doc.at("eta").get<double>();
    config.tol = doc.value("tol", config.tol);
    config.max_iter = doc.value("max_iter", config.max_iter);
    config.centering = doc.value("centering", config.centering);
    config.repartition = doc.value("repartition", config.repartition);

    FitReport report;
    report.center = center;
    report.eta = *config.eta;
    if (const auto it = doc.find("report"); it != doc.end()) {
      report.iterations_run = it->value("iterations_run", std::size_t{0});
      report.converged = it->value("converged", false);
      report.best_iteration = it->value("best_iteration", std::size_t{0});
      report.best_objective = it->value("best_objective", 0.0);
      report.objective_trace = it->value("objective_trace", std::vector<double>{});
      report.median_block_trace = it->value("median_block_trace", std::vector<std::size_t>{});
    }
    return MompcaModel(Basis::from_orthonormal(std::move(v)), center, config, std::move(report));
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string("malformed model document: ") + e.what());
  }
}

std::string dump_json(const json& doc) { return doc.dump(2) + "\n"; }

void save_model(const std::filesystem::path& path, const MompcaModel& model) {
  write_file_atomic(path, dump_json(to_json(model)));
}

MompcaModel load_model(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
  return model_from_json(doc);
}

}  // namespace mompca
