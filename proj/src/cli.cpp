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

#include "mompca/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include <CLI11.hpp>
#include <json.hpp>

#include "mompca/anomaly.hpp"
#include "mompca/background.hpp"
#include "mompca/bounds.hpp"
#include "mompca/datagen.hpp"
#include "mompca/io.hpp"
#include "mompca/metrics.hpp"
#include "mompca/model_io.hpp"
#include "mompca/mompca.hpp"
#include "mompca/parallel.hpp"
#include "mompca/random.hpp"

namespace mompca::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Files produced by one run, written together once the command succeeds.
// The manifest lists every input and output with its FNV-1a hash.
class RunOutputs {
 public:
  RunOutputs(std::string subcommand, fs::path dir) : subcommand_(std::move(subcommand)), dir_(std::move(dir)) {}

  void add(const std::string& name, std::string contents) { files_.emplace_back(name, std::move(contents)); }
  void add(const std::string& name, const std::vector<std::uint8_t>& bytes) {
    files_.emplace_back(name, std::string(bytes.begin(), bytes.end()));
  }
  void input(const std::string& flag, const fs::path& path, std::string_view contents) {
    inputs_[flag] = {{"path", path.generic_string()}, {"fnv1a64", hex64(fnv1a64(contents))}};
  }
  json& parameters() { return parameters_; }

  void commit(std::uint64_t seed) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) fail(ErrorCode::IoError, "cannot create output directory " + dir_.string());
    json outputs = json::object();
    for (const auto& [name, contents] : files_) {
      const fs::path target = dir_ / name;
      if (target.has_parent_path()) {
        fs::create_directories(target.parent_path(), ec);
        if (ec) fail(ErrorCode::IoError, "cannot create directory " + target.parent_path().string());
      }
      write_file_atomic(target, contents);
      outputs[name] = hex64(fnv1a64(contents));
    }
    const json manifest = {
        {"format", "mompca-manifest"},
        {"version", 1},
        {"tool_version", kToolVersion},
        {"rng", kRngName},
        {"subcommand", subcommand_},
        {"seed", seed},
        {"parameters", parameters_},
        {"inputs", inputs_},
        {"outputs", outputs},
    };
    write_file_atomic(dir_ / "manifest.json", dump_json(manifest));
  }

 private:
  std::string subcommand_;
  fs::path dir_;
  std::vector<std::pair<std::string, std::string>> files_;
  json inputs_ = json::object();
  json parameters_ = json::object();
};

struct Common {
  std::uint64_t seed = 0;
  std::size_t threads = 0;
};

void add_common(CLI::App* sub, Common& common) {
  sub->add_option("--seed", common.seed, "RNG seed")->capture_default_str();
  sub->add_option("--threads", common.threads, "Worker thread cap (0 = all cores)")->capture_default_str();
}

bool parse_switch(const std::string& value, const std::string& flag) {
  if (value == "on") return true;
  if (value == "off") return false;
  fail(ErrorCode::InvalidConfig, flag + " must be 'on' or 'off', got '" + value + "'");
}

DataMatrix load_input(RunOutputs& run, const std::string& flag, const fs::path& path) {
  const std::string text = read_text_file(path);
  run.input(flag, path, text);
  try {
    return parse_csv(text).data;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) fail(ErrorCode::ParseError, path.string() + ": " + e.message());
    throw;
  }
}

std::vector<std::uint8_t> load_labels(RunOutputs& run, const std::string& flag, const fs::path& path) {
  run.input(flag, path, read_text_file(path));
  return read_labels(path);
}

// Flags shared by every subcommand that fits a model.
struct FitFlags {
  std::size_t d = 0;
  std::optional<std::size_t> blocks;
  std::optional<double> eta;
  double tol = FitConfig{}.tol;
  std::size_t max_iter = FitConfig{}.max_iter;
  std::string centering = "on";
  bool repartition = false;
};

void add_fit_flags(CLI::App* sub, FitFlags& f, bool d_required, std::size_t default_d = 0,
                   std::optional<std::size_t> default_blocks = std::nullopt) {
  f.d = default_d;
  f.blocks = default_blocks;
  auto* d = sub->add_option("--d", f.d, "Subspace dimension");
  if (d_required) d->required();
  else d->capture_default_str();
  sub->add_option("--L", f.blocks, "Number of blocks (default: max(3, 3*ceil(sqrt(N))) capped at N/10)");
  sub->add_option("--eta", f.eta, "Step size (default: 1 / top eigenvalue of the initial median block)");
  sub->add_option("--tol", f.tol, "Relative objective tolerance")->capture_default_str();
  sub->add_option("--max-iter", f.max_iter, "Iteration cap")->capture_default_str();
  sub->add_option("--centering", f.centering, "Subtract the feature-wise median: on|off")->capture_default_str();
  sub->add_flag("--repartition", f.repartition, "Redraw the blocks every iteration");
}

FitConfig resolve_fit(const FitFlags& f, std::size_t n, std::uint64_t seed, std::ostream& out) {
  FitConfig c;
  c.dim = f.d;
  if (f.blocks) {
    c.blocks = *f.blocks;
  } else {
    c.blocks = default_block_count(n);
    out << "L not given; using L = " << c.blocks
        << " (3*ceil(sqrt(N)) capped at N/10, so up to about ceil(sqrt(N)) outliers leave a block majority clean)\n";
  }
  c.eta = f.eta;
  c.tol = f.tol;
  c.max_iter = f.max_iter;
  c.seed = seed;
  c.centering = parse_switch(f.centering, "--centering");
  c.repartition = f.repartition;
  return c;
}

json fit_parameters(const FitConfig& c) {
  json j = {{"d", c.dim},         {"L", c.blocks},        {"tol", c.tol},
            {"max_iter", c.max_iter}, {"centering", c.centering}, {"repartition", c.repartition}};
  j["eta"] = c.eta ? json(*c.eta) : json("auto");
  return j;
}

void print_fit_summary(std::ostream& out, const FitReport& r) {
  out << "iterations: " << r.iterations_run << (r.converged ? " (converged)" : " (iteration cap reached)")
      << "\nbest objective: " << format_double(r.best_objective) << " at iteration " << r.best_iteration
      << "\neta: " << format_double(r.eta) << "\n";
}

std::string scores_csv(const AnomalyResult& result) {
  std::string text = "index,score,label\n";
  for (std::size_t i = 0; i < result.scores.size(); ++i)
    text += std::to_string(i) + "," + format_double(result.scores[i]) + "," +
            std::to_string(static_cast<int>(result.labels[i])) + "\n";
  return text;
}

std::string labels_csv(const std::vector<std::uint8_t>& labels) {
  std::string text = "outlier\n";
  for (const auto l : labels) text += l ? "1\n" : "0\n";
  return text;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      fail(ErrorCode::InvalidConfig, "'" + item + "' is not a number");
    }
  }
  return values;
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::IoError:
      return kExitIo;
    case ErrorCode::RankDeficient:
    case ErrorCode::ConvergenceFailure:
      return kExitNumerical;
    default:
      return kExitValidation;
  }
}

std::size_t default_block_count(std::size_t n) {
  const auto root = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  const std::size_t wanted = std::max<std::size_t>(3, 3 * root);
  return std::max<std::size_t>(1, std::min(wanted, n / 10));
}

BenchSummary run_bench(const BenchOptions& options) {
  BenchSummary summary;
  BenchOptions& o = summary.resolved;
  o = options;
  if (o.d == 0) o.d = o.r;
  const auto root = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(o.n))));
  if (o.blocks == 0) o.blocks = 3 * root;
  if (o.outliers < 0) o.outliers = static_cast<std::int64_t>(root);
  require(o.repeats >= 1, ErrorCode::InvalidConfig, "repeats must be at least 1");
  const auto n_out = static_cast<std::size_t>(o.outliers);
  const double needed = (2.0 + o.eta_slack) * static_cast<double>(n_out);
  if (!o.force)
    require(static_cast<double>(o.blocks) > needed, ErrorCode::AssumptionViolated,
            "block-majority condition L > (2+eta)*n_outliers fails: L = " + std::to_string(o.blocks) +
                ", (2+eta)*n_outliers = " + format_double(needed) + " (use --force to run anyway)");

  for (std::size_t k = 0; k < o.repeats; ++k) {
    BenchRow row;
    row.repeat = k;
    row.seed = derive_seed(o.seed, k);
    const SyntheticDataset ds = lowrank_with_outliers(o.n, o.p, o.r, row.seed, n_out);
    const std::vector<std::size_t> inliers = ds.inlier_rows();

    FitConfig c;
    c.dim = o.d;
    c.blocks = o.blocks;
    c.seed = row.seed;
    c.centering = o.centering;
    const MompcaModel model = fit(ds.x, c);
    row.mompca_error = relative_reconstruction_error(reconstruct(model, ds.x), ds.clean, inliers);
    row.iterations = model.report().iterations_run;
    row.converged = model.report().converged;

    c.blocks = 1;
    const MompcaModel baseline = fit(ds.x, c);
    row.baseline_error = relative_reconstruction_error(reconstruct(baseline, ds.x), ds.clean, inliers);

    summary.mean_mompca_error += row.mompca_error / static_cast<double>(o.repeats);
    summary.mean_baseline_error += row.baseline_error / static_cast<double>(o.repeats);
    summary.rows.push_back(row);
  }
  return summary;
}

namespace {

void cmd_generate(const std::string& kind, std::size_t n, std::size_t p, std::size_t r,
                  std::int64_t outliers, const std::string& variances, std::size_t height,
                  std::size_t width, std::size_t frames, std::size_t square, std::size_t step,
                  const Common& common, RunOutputs& run, std::ostream& out) {
  json& params = run.parameters();
  params["kind"] = kind;
  if (kind == "lowrank") {
    std::optional<std::size_t> count;
    if (outliers >= 0) count = static_cast<std::size_t>(outliers);
    const SyntheticDataset ds = lowrank_with_outliers(n, p, r, common.seed, count);
    params.update({{"n", n}, {"p", p}, {"r", r}, {"outliers", ds.outlier_rows.size()}});
    run.add("x.csv", format_csv(ds.x.matrix()));
    run.add("clean.csv", format_csv(ds.clean.matrix()));
    run.add("labels.csv", labels_csv(ds.outlier_labels()));
    out << "generated " << n << " x " << p << " rank-" << r << " data with " << ds.outlier_rows.size()
        << " corrupted rows\n";
  } else if (kind == "gaussian") {
    std::vector<double> v = variances.empty() ? std::vector<double>(p, 1.0) : parse_list(variances);
    require(v.size() == p, ErrorCode::InvalidConfig, "--variances must list exactly p values");
    params.update({{"n", n}, {"p", p}, {"variances", v}});
    run.add("x.csv", format_csv(gaussian_inliers(n, p, v, common.seed).matrix()));
    out << "generated " << n << " x " << p << " Gaussian sample\n";
  } else if (kind == "video") {
    const SyntheticVideo video = moving_square_video(height, width, frames, square, step);
    params.update({{"height", height}, {"width", width}, {"frames", frames}, {"square", square}, {"step", step}});
    for (std::size_t j = 0; j < video.frames.frame_count(); ++j) {
      char name[32];
      std::snprintf(name, sizeof name, "frames/%06zu.pgm", j);
      run.add(name, encode_pgm(video.frames.frame(j)));
    }
    Frame mask{height, width, std::vector<double>(video.trajectory.begin(), video.trajectory.end())};
    run.add("trajectory.pgm", encode_pgm(mask));
    out << "generated " << frames << " frames of " << height << " x " << width << "\n";
  } else {
    fail(ErrorCode::InvalidConfig, "unknown --kind '" + kind + "' (lowrank, gaussian, video)");
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Median-of-means PCA toolkit", "mompca"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  Common common;
  fs::path out_dir;

  // fit
  fs::path fit_input;
  FitFlags fit_flags;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a model to a CSV sample");
  fit_cmd->add_option("--input", fit_input, "CSV, one observation per row")->required();
  add_fit_flags(fit_cmd, fit_flags, true);
  fit_cmd->add_option("--out", out_dir, "Output directory")->required();
  add_common(fit_cmd, common);

  // transform
  fs::path tr_input;
  fs::path tr_model;
  bool tr_reconstruct = false;
  auto* tr_cmd = app.add_subcommand("transform", "Project a CSV sample with a saved model");
  tr_cmd->add_option("--input", tr_input, "CSV, one observation per row")->required();
  tr_cmd->add_option("--model", tr_model, "Model JSON written by fit")->required();
  tr_cmd->add_flag("--reconstruct", tr_reconstruct, "Also write reconstructions");
  tr_cmd->add_option("--out", out_dir, "Output directory")->required();
  add_common(tr_cmd, common);

  // anomaly
  fs::path an_input;
  std::optional<fs::path> an_model;
  std::optional<fs::path> an_truth;
  double an_fraction = 0.0;
  FitFlags an_flags;
  auto* an_cmd = app.add_subcommand("anomaly", "Flag the rows farthest from the fitted subspace");
  an_cmd->add_option("--input", an_input, "CSV, one observation per row")->required();
  an_cmd->add_option("--fraction", an_fraction, "Fraction o of rows to flag, 0 < o < 1")->required();
  an_cmd->add_option("--model", an_model, "Saved model (otherwise a model is fitted)");
  an_cmd->add_option("--truth", an_truth, "Ground-truth 0/1 labels, one per row");
  add_fit_flags(an_cmd, an_flags, false, 1);
  an_cmd->add_option("--out", out_dir, "Output directory")->required();
  add_common(an_cmd, common);

  // bench
  BenchOptions bench;
  std::string bench_centering = "off";
  auto* bench_cmd = app.add_subcommand("bench", "Low-rank recovery benchmark against classical PCA");
  bench_cmd->add_option("--n", bench.n, "Observations")->capture_default_str();
  bench_cmd->add_option("--p", bench.p, "Features")->capture_default_str();
  bench_cmd->add_option("--r", bench.r, "True rank")->capture_default_str();
  bench_cmd->add_option("--d", bench.d, "Fitted dimension (0 = r)")->capture_default_str();
  bench_cmd->add_option("--L", bench.blocks, "Blocks (0 = 3*floor(sqrt(n)))")->capture_default_str();
  bench_cmd->add_option("--outliers", bench.outliers, "Corrupted rows (-1 = floor(sqrt(n)))")->capture_default_str();
  bench_cmd->add_option("--repeats", bench.repeats, "Repetitions")->capture_default_str();
  bench_cmd->add_option("--centering", bench_centering, "Median-centering: on|off")->capture_default_str();
  bench_cmd->add_option("--eta-slack", bench.eta_slack, "Slack in the block-majority check L > (2+eta)*outliers")
      ->capture_default_str();
  bench_cmd->add_flag("--force", bench.force, "Run even if the block-majority check fails");
  bench_cmd->add_option("--out", out_dir, "Output directory")->required();
  add_common(bench_cmd, common);

  // background
  fs::path bg_frames;
  FitFlags bg_flags;
  auto* bg_cmd = app.add_subcommand("background", "Separate a static background from moving objects");
  bg_cmd->add_option("--frames", bg_frames, "Directory of %06d.pgm frames")->required();
  add_fit_flags(bg_cmd, bg_flags, false, 5, 40);
  bg_cmd->add_option("--out", out_dir, "Output directory")->required();
  add_common(bg_cmd, common);

  // bounds
  std::size_t b_p = 0, b_d = 0, b_n = 0, b_l = 0, b_out = 0, b_draws = 0;
  std::optional<std::size_t> b_in;
  std::optional<double> b_mu2, b_mu4;
  double b_eta = 1.0;
  bool b_force = false;
  std::optional<fs::path> b_sample, b_truth;
  auto* b_cmd = app.add_subcommand("bounds", "Evaluate the concentration bounds");
  b_cmd->add_option("--p", b_p, "Ambient dimension (taken from --sample when given)");
  b_cmd->add_option("--d", b_d, "Subspace dimension")->required();
  b_cmd->add_option("--N", b_n, "Sample size (taken from --sample when given)");
  b_cmd->add_option("--L", b_l, "Number of blocks")->required();
  b_cmd->add_option("--n-outliers", b_out, "Number of outliers");
  b_cmd->add_option("--n-inliers", b_in, "Number of inliers (default N - n_outliers)");
  b_cmd->add_option("--eta-slack", b_eta, "Slack eta in L > (2+eta)*n_outliers")->capture_default_str();
  b_cmd->add_option("--mu2", b_mu2, "Second moment E||x||^2");
  b_cmd->add_option("--mu4", b_mu4, "Fourth moment E||x||^4");
  b_cmd->add_option("--sample", b_sample, "CSV sample to estimate the moments from");
  b_cmd->add_option("--truth", b_truth, "0/1 outlier labels for --sample; moments then use inliers only");
  b_cmd->add_option("--draws", b_draws, "Monte-Carlo draws for the empirical Rademacher complexity of --sample")
      ->capture_default_str();
  b_cmd->add_flag("--force", b_force, "Report even when the assumptions fail");
  b_cmd->add_option("--out", out_dir, "Output directory")->required();
  add_common(b_cmd, common);

  // generate
  std::string g_kind = "lowrank", g_var;
  std::size_t g_n = 200, g_p = 50, g_r = 5, g_h = 32, g_w = 32, g_f = 50, g_sq = 6, g_step = 1;
  std::int64_t g_out = -1;
  auto* g_cmd = app.add_subcommand("generate", "Write synthetic datasets");
  g_cmd->add_option("--kind", g_kind, "lowrank | gaussian | video")->capture_default_str();
  g_cmd->add_option("--n", g_n, "Observations")->capture_default_str();
  g_cmd->add_option("--p", g_p, "Features")->capture_default_str();
  g_cmd->add_option("--r", g_r, "Rank (lowrank)")->capture_default_str();
  g_cmd->add_option("--outliers", g_out, "Corrupted rows (lowrank; -1 = floor(sqrt(n)))")->capture_default_str();
  g_cmd->add_option("--variances", g_var, "Comma-separated variances (gaussian; default all 1)");
  g_cmd->add_option("--height", g_h, "Frame height (video)")->capture_default_str();
  g_cmd->add_option("--width", g_w, "Frame width (video)")->capture_default_str();
  g_cmd->add_option("--frames", g_f, "Frame count (video)")->capture_default_str();
  g_cmd->add_option("--square", g_sq, "Square side (video)")->capture_default_str();
  g_cmd->add_option("--step", g_step, "Pixels moved per frame (video)")->capture_default_str();
  g_cmd->add_option("--out", out_dir, "Output directory")->required();
  add_common(g_cmd, common);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    set_thread_limit(common.threads);
    CLI::App* sub = app.get_subcommands().front();
    RunOutputs run(sub->get_name(), out_dir);
    run.parameters()["threads"] = common.threads;

    if (sub == fit_cmd) {
      const DataMatrix x = load_input(run, "input", fit_input);
      const FitConfig c = resolve_fit(fit_flags, x.rows(), common.seed, out);
      run.parameters().update(fit_parameters(c));
      const MompcaModel model = fit(x, c);
      run.add("model.json", dump_json(to_json(model)));
      run.add("report.json", dump_json(to_json(model.report())));
      print_fit_summary(out, model.report());
    } else if (sub == tr_cmd) {
      const DataMatrix x = load_input(run, "input", tr_input);
      run.input("model", tr_model, read_text_file(tr_model));
      const MompcaModel model = load_model(tr_model);
      run.parameters()["reconstruct"] = tr_reconstruct;
      std::vector<std::string> header;
      for (std::size_t k = 0; k < model.dim_sub(); ++k) header.push_back("score" + std::to_string(k + 1));
      run.add("scores.csv", format_csv(transform(model, x).matrix(), header));
      if (tr_reconstruct) run.add("reconstruction.csv", format_csv(reconstruct(model, x).matrix()));
      out << "projected " << x.rows() << " rows onto " << model.dim_sub() << " dimensions\n";
    } else if (sub == an_cmd) {
      const DataMatrix x = load_input(run, "input", an_input);
      require(an_fraction > 0.0 && an_fraction < 1.0, ErrorCode::InvalidFraction,
              "--fraction must lie strictly between 0 and 1");
      std::optional<MompcaModel> model;
      if (an_model) {
        run.input("model", *an_model, read_text_file(*an_model));
        model = load_model(*an_model);
      } else {
        const FitConfig c = resolve_fit(an_flags, x.rows(), common.seed, out);
        run.parameters().update(fit_parameters(c));
        const double n_out = an_fraction * static_cast<double>(x.rows());
        out << "block-majority heuristic: L = " << c.blocks << " vs 2*o*N = " << format_double(2.0 * n_out)
            << (static_cast<double>(c.blocks) > 2.0 * n_out ? " (satisfied)" : " (NOT satisfied; not enforced)")
            << "\n";
        model = fit(x, c);
        run.add("model.json", dump_json(to_json(*model)));
      }
      run.parameters()["fraction"] = an_fraction;
      const AnomalyResult result = label_top_fraction(anomaly_scores(*model, x), an_fraction);
      run.add("scores.csv", scores_csv(result));
      std::size_t flagged = 0;
      for (const auto l : result.labels) flagged += l;
      out << "flagged " << flagged << " of " << x.rows() << " rows (threshold " << format_double(result.threshold)
          << ")\n";
      if (an_truth) {
        const auto truth = load_labels(run, "truth", *an_truth);
        const ClassificationScores s = precision_recall_f1(result.labels, truth);
        run.add("metrics.json", dump_json(to_json(s)));
        out << "precision " << format_double(s.precision) << "  recall " << format_double(s.recall) << "  f1 "
            << format_double(s.f1) << "\n";
      }
    } else if (sub == bench_cmd) {
      bench.seed = common.seed;
      bench.centering = parse_switch(bench_centering, "--centering");
      const BenchSummary s = run_bench(bench);
      const BenchOptions& o = s.resolved;
      run.parameters().update({{"n", o.n}, {"p", o.p}, {"r", o.r}, {"d", o.d}, {"L", o.blocks},
                               {"outliers", o.outliers}, {"repeats", o.repeats}, {"centering", o.centering},
                               {"eta_slack", o.eta_slack}, {"force", o.force}});
      std::string csv = "repeat,seed,mompca_error,baseline_error,iterations,converged\n";
      std::ostringstream text;
      text << "n=" << o.n << " p=" << o.p << " r=" << o.r << " d=" << o.d << " L=" << o.blocks
           << " outliers=" << o.outliers << " centering=" << (o.centering ? "on" : "off") << "\n";
      text << "repeat  mompca_error             baseline_error           iterations\n";
      json rows = json::array();
      for (const BenchRow& r : s.rows) {
        csv += std::to_string(r.repeat) + "," + std::to_string(r.seed) + "," + format_double(r.mompca_error) + "," +
               format_double(r.baseline_error) + "," + std::to_string(r.iterations) + "," +
               (r.converged ? "1" : "0") + "\n";
        char line[160];
        std::snprintf(line, sizeof line, "%6zu  %-23.6e  %-23.6e  %zu%s\n", r.repeat, r.mompca_error,
                      r.baseline_error, r.iterations, r.converged ? "" : " (cap)");
        text << line;
      }
      char mean[160];
      std::snprintf(mean, sizeof mean, "  mean  %-23.6e  %-23.6e\n", s.mean_mompca_error, s.mean_baseline_error);
      text << mean;
      run.add("bench.csv", csv);
      run.add("bench.txt", text.str());
      run.add("summary.json", dump_json({{"format", "mompca-bench"},
                                         {"version", 1},
                                         {"mean_mompca_error", s.mean_mompca_error},
                                         {"mean_baseline_error", s.mean_baseline_error}}));
      out << text.str();
    } else if (sub == bg_cmd) {
      const FrameSequence seq = read_frame_directory(bg_frames);
      for (std::size_t j = 0; j < seq.frame_count(); ++j) {
        char name[32];
        std::snprintf(name, sizeof name, "frame_%06zu", j);
        const std::vector<std::uint8_t> bytes = encode_pgm(seq.frame(j));
        run.input(name, bg_frames, std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
      }
      const FitConfig c = resolve_fit(bg_flags, seq.pixel_count(), common.seed, out);
      run.parameters().update(fit_parameters(c));
      const Separation sep = separate(seq, c);
      for (std::size_t j = 0; j < sep.background.frame_count(); ++j) {
        char name[40];
        std::snprintf(name, sizeof name, "background/%06zu.pgm", j);
        run.add(name, encode_pgm(sep.background.frame(j)));
      }
      run.add("object_map.pgm", encode_pgm(heat_image(sep.object_map, sep.height, sep.width)));
      Matrix grid(sep.height, sep.width, sep.object_map);
      run.add("object_map.csv", format_csv(grid));
      run.add("report.json", dump_json(to_json(sep.report)));
      out << "separated " << seq.frame_count() << " frames of " << seq.height() << " x " << seq.width() << "\n";
      print_fit_summary(out, sep.report);
    } else if (sub == b_cmd) {
      BoundInputs in;
      in.d = b_d;
      in.blocks = b_l;
      in.eta_slack = b_eta;
      in.n_outliers = b_out;
      json& params = run.parameters();
      if (b_sample) {
        const DataMatrix x = load_input(run, "sample", *b_sample);
        std::optional<std::vector<std::uint8_t>> truth;
        if (b_truth) {
          truth = load_labels(run, "truth", *b_truth);
          std::size_t count = 0;
          for (const auto l : *truth) count += l;
          if (b_cmd->count("--n-outliers") == 0) in.n_outliers = count;
        }
        const SampleMoments m =
            truth ? sample_moments(x, std::span<const std::uint8_t>(*truth)) : sample_moments(x);
        in.p = x.cols();
        in.n = b_cmd->count("--N") ? b_n : x.rows();
        in.mu2 = m.mu2;
        in.mu4 = m.mu4;
        params["moments"] = to_json(m);
        if (b_draws > 0) {
          // The estimate runs on the same rows the moments came from.
          Matrix kept(m.count, x.cols());
          for (std::size_t i = 0, k = 0; i < x.rows(); ++i) {
            if (truth && (*truth)[i] != 0) continue;
            std::copy(x.row(i).begin(), x.row(i).end(), kept.row(k++).begin());
          }
          const RademacherEstimate est =
              empirical_rademacher_complexity(DataMatrix(std::move(kept)), in.d, b_draws, common.seed);
          params["draws"] = b_draws;
          run.add("rademacher.json",
                  dump_json({{"estimate", est.estimate},
                             {"std_error", est.std_error},
                             {"draws", est.draws},
                             {"rows", m.count},
                             {"bound", rademacher_bound(x.cols(), in.d, m.mu4, m.count)}}));
          out << "empirical Rademacher complexity " << format_double(est.estimate) << " +- "
              << format_double(est.std_error) << "\n";
        }
      } else {
        require(b_mu2.has_value() && b_mu4.has_value(), ErrorCode::InvalidConfig,
                "give --mu2 and --mu4, or --sample");
        require(b_cmd->count("--p") && b_cmd->count("--N"), ErrorCode::InvalidConfig,
                "--p and --N are required without --sample");
        in.p = b_p;
        in.n = b_n;
        in.mu2 = *b_mu2;
        in.mu4 = *b_mu4;
      }
      require(in.n_outliers <= in.n, ErrorCode::InvalidConfig, "more outliers than observations");
      in.n_inliers = b_in.value_or(in.n - in.n_outliers);
      params["force"] = b_force;
      BoundReport report;
      std::optional<std::string> violation;
      try {
        report = deviation_bound(in);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::AssumptionViolated || !b_force) throw;
        err << "warning: " << e.what() << "\n";
        violation = e.message();
        report = deviation_bound_unchecked(in);
      }
      json doc = to_json(report);
      doc["assumptions_hold"] = !violation.has_value();
      if (violation) doc["assumption_violation"] = *violation;
      run.add("bounds.json", dump_json(doc));
      out << "rademacher bound " << format_double(report.rademacher_bound) << "\ndeviation bound "
          << format_double(report.deviation_bound) << "\nsuccess probability "
          << format_double(report.success_probability) << "\n";
    } else if (sub == g_cmd) {
      cmd_generate(g_kind, g_n, g_p, g_r, g_out, g_var, g_h, g_w, g_f, g_sq, g_step, common, run, out);
    }
    run.commit(common.seed);
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const fs::filesystem_error& e) {
    err << "error: IoError: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kExitNumerical;
  }
}

}  // namespace mompca::cli
