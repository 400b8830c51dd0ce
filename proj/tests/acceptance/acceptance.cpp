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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "../support/oracles.hpp"
#include "mompca/anomaly.hpp"
#include "mompca/background.hpp"
#include "mompca/bounds.hpp"
#include "mompca/cli.hpp"
#include "mompca/datagen.hpp"
#include "mompca/io.hpp"
#include "mompca/linalg.hpp"
#include "mompca/metrics.hpp"
#include "mompca/mompca.hpp"

using namespace mompca;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

double degrees(double radians) { return radians * 180.0 / std::numbers::pi; }

Basis direction(double angle) {
  return Basis::from_orthonormal(Matrix{{std::cos(angle)}, {std::sin(angle)}});
}

// ---------------------------------------------------------------------------

Outcome low_rank_benchmark() {
  const std::size_t sizes[] = {500, 1000, 2000};
  std::vector<double> means;
  bool beats_baseline = true;
  std::string detail = "mean error";
  for (const std::size_t n : sizes) {
    cli::BenchOptions o;
    o.n = n;
    o.p = 500;
    o.r = 10;
    o.repeats = 5;
    o.seed = 1;
    const cli::BenchSummary s = cli::run_bench(o);
    means.push_back(s.mean_mompca_error);
    beats_baseline = beats_baseline && s.mean_mompca_error < s.mean_baseline_error;
    detail += " n=" + std::to_string(n) + ": " + fmt("%.3e", s.mean_mompca_error) + " (L=1 " +
              fmt("%.3e", s.mean_baseline_error) + ")";
  }
  const bool within = means.back() <= 5.6e-4;
  const bool monotone = means[0] > means[1] && means[1] > means[2];
  detail += within ? "; n=2000 <= 5.6e-4" : "; n=2000 ABOVE 5.6e-4";
  detail += monotone ? "; decreasing in n" : "; NOT decreasing in n";
  if (!beats_baseline) detail += "; did not beat L=1";
  return {within && monotone && beats_baseline, detail};
}

Outcome planar_outliers() {
  // Rotated anisotropic Gaussian in the plane: standard deviations 4 and 1.
  const double major = 0.5;
  const Basis major_axis = direction(major);
  const double c = std::cos(major), s = std::sin(major);
  const DataMatrix base = gaussian_inliers(1000, 2, std::vector<double>{16.0, 1.0}, 21);
  Matrix inliers(1000, 2);
  for (std::size_t i = 0; i < 1000; ++i) {
    inliers(i, 0) = c * base(i, 0) - s * base(i, 1);
    inliers(i, 1) = s * base(i, 0) + c * base(i, 1);
  }
  const DataMatrix clean(inliers);
  const Basis truth = top_eigenvectors(scatter_matrix(center(clean, featurewise_median(clean))), 1).vectors;

  // For each outlier draw, double the magnitude until classical PCA is more
  // than 20 degrees off, then fit MoM on that same sample. Draws whose
  // outliers never pull classical PCA that far are skipped.
  std::size_t forced = 0, missed = 0;
  double worst_robust = 0.0, smallest_classical = 180.0;
  for (std::uint64_t draw = 1; draw <= 20; ++draw) {
    for (double magnitude = 5.0; magnitude <= 1e4; magnitude *= 2.0) {
      Matrix all(1010, 2);
      for (std::size_t i = 0; i < 1000; ++i) all(i, 0) = inliers(i, 0), all(i, 1) = inliers(i, 1);
      // Outliers uniform on the square [-magnitude, magnitude]^2.
      RandomStream noise(draw, Stream::OutlierNoise);
      for (std::size_t k = 0; k < 10; ++k) {
        all(1000 + k, 0) = magnitude * (2.0 * noise.uniform() - 1.0);
        all(1000 + k, 1) = magnitude * (2.0 * noise.uniform() - 1.0);
      }
      const DataMatrix x(all);
      FitConfig cfg;
      cfg.dim = 1;
      cfg.seed = 2;
      cfg.blocks = 1;
      const double classical = degrees(subspace_distance(fit(x, cfg).basis(), truth).max_principal_angle);
      if (classical <= 20.0) continue;
      cfg.blocks = 40;
      const double robust = degrees(subspace_distance(fit(x, cfg).basis(), truth).max_principal_angle);
      ++forced;
      missed += !(robust < 5.0);
      worst_robust = std::max(worst_robust, robust);
      smallest_classical = std::min(smallest_classical, classical);
      break;
    }
  }
  const double axis_error = degrees(subspace_distance(truth, major_axis).max_principal_angle);
  return {forced > 0 && missed == 0,
          std::to_string(forced) + " of 20 outlier draws forced classical PCA past 20 deg (smallest " +
              fmt("%.2f", smallest_classical) + " deg); MoM worst " + fmt("%.3f", worst_robust) + " deg, " +
              std::to_string(missed) + " above 5 deg (clean eigvec vs true axis " + fmt("%.3f", axis_error) +
              " deg)"};
}

Outcome single_block_reduction() {
  std::vector<double> spectrum{10, 8, 6, 1, 1, 1, 1, 1, 1, 1};
  const DataMatrix x = gaussian_inliers(2000, 10, spectrum, 31);
  FitConfig cfg;
  cfg.dim = 3;
  cfg.blocks = 1;
  cfg.seed = 31;
  const MompcaModel m = fit(x, cfg);
  const Basis baseline = top_eigenvectors(scatter_matrix(center(x, featurewise_median(x))), 3).vectors;
  const double angle = subspace_distance(m.basis(), baseline).max_principal_angle;
  return {angle < 0.05, "max principal angle " + fmt("%.3e", angle) + " rad (limit 0.05)"};
}

Outcome orthonormality_audit_result() {
  const OrthonormalityAudit a = orthonormality_audit();
  return {a.iterates > 0 && a.worst <= 1e-10,
          std::to_string(a.iterates) + " iterates audited, worst ||V'V - I||_F = " + fmt("%.3e", a.worst)};
}

Outcome median_and_partition_oracles() {
  RandomStream rng(55, 1);
  std::size_t median_cases = 0, median_bad = 0;
  for (; median_cases < 10000; ++median_cases) {
    const std::size_t l = 1 + rng.below(60);
    std::vector<double> values(l);
    const bool tied = median_cases % 3 == 0;
    for (double& v : values) v = tied ? static_cast<double>(rng.below(4)) : rng.normal();
    const MedianBlock mine = median_block(values);
    const auto ref = oracle::lower_median(values);
    median_bad += mine.index != ref.first || mine.value != ref.second;
  }
  std::size_t plan_bad = 0;
  for (std::size_t k = 0; k < 1000; ++k) {
    const std::size_t n = 1 + rng.below(500);
    const std::size_t l = 1 + rng.below(n);
    const PartitionPlan plan = partition(n, l, k);
    std::vector<int> seen(n, 0);
    bool ok = plan.block_count() == l && plan.block_size == n / l && plan.dropped.size() == n % l;
    for (const auto& b : plan.blocks) {
      ok = ok && b.size() == n / l;
      for (const std::size_t i : b) ok = ok && i < n && ++seen[i] == 1;
    }
    for (const std::size_t i : plan.dropped) ok = ok && i < n && ++seen[i] == 1;
    ok = ok && std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; });
    plan_bad += !ok;
  }
  return {median_bad == 0 && plan_bad == 0,
          std::to_string(median_cases) + " median cases (" + std::to_string(median_bad) + " mismatches), 1000 plans (" +
              std::to_string(plan_bad) + " violations)"};
}

Outcome rademacher_check() {
  RandomStream rng(66, 2);
  std::size_t bad = 0;
  double worst_ratio = 0.0;
  for (std::size_t k = 0; k < 20; ++k) {
    const std::size_t p = 2 + rng.below(9);
    const std::size_t d = 1 + rng.below(p - 1);
    const std::size_t m = 10 + rng.below(91);
    std::vector<double> var(p);
    for (double& v : var) v = 0.2 + 3.0 * rng.uniform();
    const DataMatrix y = gaussian_inliers(m, p, var, 1000 + k);
    const RademacherEstimate est = empirical_rademacher_complexity(y, d, 2000, 2000 + k);
    const double bound = rademacher_bound(p, d, sample_moments(y).mu4, m);
    const double lhs = est.estimate + 3.0 * est.std_error;
    worst_ratio = std::max(worst_ratio, lhs / bound);
    bad += !(lhs <= bound);
  }
  return {bad == 0, "20 configurations, " + std::to_string(bad) + " violations, largest (estimate + 3 se) / bound = " +
                        fmt("%.3f", worst_ratio)};
}

Outcome consistency_proxy() {
  const std::vector<double> var{5, 4, 3, 2, 1};
  const double population = 3.0 + 2.0 + 1.0;
  const std::size_t sizes[] = {1000, 10000, 100000};
  const int seeds = 10;
  std::vector<double> gaps;
  bool dominated = true;
  std::string detail = "mean |gap| vs bound:";
  for (const std::size_t n : sizes) {
    const std::size_t l = n / 100;
    double gap = 0.0;
    double bound = 0.0;
    for (int s = 0; s < seeds; ++s) {
      const DataMatrix x = gaussian_inliers(n, 5, var, 700 + s);
      FitConfig cfg;
      cfg.dim = 2;
      cfg.blocks = l;
      cfg.seed = 800 + s;
      const MompcaModel m = fit(x, cfg);
      const double objective = mom_objective(center(x, m.center()), partition(n, l, cfg.seed), m.basis());
      const double g = std::abs(objective - population);
      const SampleMoments mom = sample_moments(x);
      BoundInputs in;
      in.p = 5;
      in.d = 2;
      in.mu2 = mom.mu2;
      in.mu4 = mom.mu4;
      in.n = n;
      in.blocks = l;
      in.n_outliers = 0;
      in.n_inliers = n;
      in.eta_slack = 1.0;
      const double b = deviation_bound(in).deviation_bound;
      dominated = dominated && g <= b;
      gap += g / seeds;
      bound += b / seeds;
    }
    gaps.push_back(gap);
    detail += " N=" + std::to_string(n) + ": " + fmt("%.4f", gap) + " vs " + fmt("%.2f", bound);
  }
  const bool shrinking = gaps[0] > gaps[1] && gaps[1] > gaps[2];
  detail += shrinking ? "; shrinking" : "; NOT shrinking";
  detail += dominated ? "; dominated in every run" : "; NOT dominated";
  return {shrinking && dominated, detail};
}

Outcome anomaly_suite() {
  const std::size_t p = 20;
  RandomStream rng(88, 3);
  Matrix g(p, 3);
  for (double& v : g.values()) v = rng.normal();
  const Basis span = gram_schmidt_orthonormalize(g);
  Matrix rows(1000, p);
  std::vector<std::uint8_t> truth(1000, 0);
  for (std::size_t k = 0; k < 50; ++k) truth[rng.below(1000)] = 1;
  while (std::accumulate(truth.begin(), truth.end(), 0) < 50) truth[rng.below(1000)] = 1;
  for (std::size_t i = 0; i < 1000; ++i) {
    auto row = span.combine(std::vector<double>{3 * rng.normal(), 2 * rng.normal(), rng.normal()});
    if (truth[i]) {
      // Push the point off the subspace by a large orthogonal offset.
      std::vector<double> noise(p);
      for (double& v : noise) v = rng.normal();
      const auto inside = apply_projector(span, noise);
      double norm = 0.0;
      for (std::size_t j = 0; j < p; ++j) norm += (noise[j] - inside[j]) * (noise[j] - inside[j]);
      for (std::size_t j = 0; j < p; ++j) row[j] += 25.0 * (noise[j] - inside[j]) / std::sqrt(norm);
    }
    std::copy(row.begin(), row.end(), rows.row(i).begin());
  }
  const DataMatrix x(rows);
  FitConfig cfg;
  cfg.dim = 3;
  cfg.blocks = 120;
  cfg.seed = 8;
  const MompcaModel model = fit(x, cfg);
  const std::vector<double> scores = anomaly_scores(model, x);
  const AnomalyResult result = label_top_fraction(scores, 0.05);
  const double f1 = precision_recall_f1(result.labels, truth).f1;

  std::size_t invariant_failures = 0;
  // Exact counts and monotone labels over a grid of sizes and fractions.
  for (std::size_t n : {1u, 3u, 10u, 99u, 1000u}) {
    std::vector<double> s(n);
    for (double& v : s) v = std::floor(rng.uniform() * 4.0);
    std::vector<std::uint8_t> prev(n, 0);
    for (double o = 0.01; o < 1.0; o += 0.07) {
      const AnomalyResult r = label_top_fraction(s, o);
      const std::size_t expected = std::max<std::size_t>(1, flagged_count(n, o));
      invariant_failures += std::accumulate(r.labels.begin(), r.labels.end(), std::size_t{0}) != expected;
      for (std::size_t i = 0; i < n; ++i) invariant_failures += r.labels[i] < prev[i];
      prev = r.labels;
    }
  }
  // Tie policy and the ten-score example.
  std::vector<double> ramp(10);
  std::iota(ramp.begin(), ramp.end(), 0.0);
  const std::vector<std::uint8_t> last_two{0, 0, 0, 0, 0, 0, 0, 0, 1, 1};
  invariant_failures += label_top_fraction(ramp, 0.2).labels != last_two;
  invariant_failures += label_top_fraction(std::vector<double>(10, 2.0), 0.2).labels != last_two;
  // Hand arithmetic: TP = 3, FP = 1, FN = 2.
  const auto hand = precision_recall_f1(std::vector<std::uint8_t>{1, 1, 1, 1, 0, 0},
                                        std::vector<std::uint8_t>{1, 1, 1, 0, 1, 1});
  invariant_failures += std::abs(hand.precision - 0.75) > 1e-12 || std::abs(hand.recall - 0.6) > 1e-12 ||
                        std::abs(hand.f1 - 0.9 / 1.35) > 1e-12;
  // Scores depend only on span(V): rotate the basis inside its span.
  Matrix rotated = model.basis().matrix();
  const double c = std::cos(1.1), sn = std::sin(1.1);
  for (std::size_t i = 0; i < p; ++i) {
    const double a = rotated(i, 0), b = rotated(i, 2);
    rotated(i, 0) = c * a - sn * b;
    rotated(i, 2) = sn * a + c * b;
  }
  const MompcaModel turned(Basis::from_orthonormal(rotated), model.center(), model.config(), model.report());
  const std::vector<double> turned_scores = anomaly_scores(turned, x);
  double drift = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) drift = std::max(drift, std::abs(scores[i] - turned_scores[i]));
  invariant_failures += drift > 1e-9;

  return {f1 >= 0.95 && invariant_failures == 0,
          "F1 " + fmt("%.4f", f1) + " (limit 0.95), " + std::to_string(invariant_failures) +
              " invariant failures, rotation drift " + fmt("%.2e", drift)};
}

Outcome background_suite() {
  const SyntheticVideo video = moving_square_video(32, 32, 50, 6, 1);
  FitConfig cfg;
  cfg.dim = 1;
  cfg.blocks = 40;
  cfg.seed = 3;
  const Separation s = separate(video.frames, cfg);
  const std::size_t k = std::accumulate(video.trajectory.begin(), video.trajectory.end(), std::size_t{0});
  std::vector<std::size_t> order(s.object_map.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return s.object_map[a] > s.object_map[b]; });
  std::size_t hits = 0;
  for (std::size_t r = 0; r < k; ++r) hits += video.trajectory[order[r]];
  const double coverage = static_cast<double>(hits) / static_cast<double>(k);
  const double false_rate = static_cast<double>(k - hits) / static_cast<double>(s.object_map.size() - k);

  // PGM round trip through files.
  const fs::path dir = fs::temp_directory_path() / "mompca_acceptance_pgm";
  fs::remove_all(dir);
  write_frame_directory(dir, s.background);
  bool exact = true;
  const FrameSequence back = read_frame_directory(dir);
  for (std::size_t j = 0; j < back.frame_count(); ++j) {
    char name[16];
    std::snprintf(name, sizeof name, "%06zu.pgm", j);
    exact = exact && encode_pgm(back.frame(j)) == read_binary_file(dir / name);
    exact = exact && decode_pgm(encode_pgm(back.frame(j))) == back.frame(j);
  }
  return {coverage >= 0.9 && false_rate <= 0.05 && exact,
          "trajectory coverage " + fmt("%.3f", coverage) + " (>= 0.9), false coverage " + fmt("%.4f", false_rate) +
              " (<= 0.05), PGM round trip " + (exact ? "bit-exact" : "MISMATCH")};
}

std::string slurp_tree(const fs::path& root) {
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file()) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::string all;
  for (const auto& f : files) {
    all += fs::relative(f, root).generic_string();
    all += '\n';
    all += read_text_file(f);
  }
  return all;
}

Outcome cli_determinism() {
  const fs::path work = fs::temp_directory_path() / "mompca_acceptance_cli";
  fs::remove_all(work);
  fs::create_directories(work);
  const std::string tool = MOMPCA_TOOL_PATH;
  auto sh = [&](const std::string& args) {
    return std::system((tool + " " + args + " > /dev/null 2>&1").c_str());
  };
  // Shared inputs.
  const std::string w = work.string();
  if (sh("generate --n 400 --p 30 --r 3 --seed 5 --out " + w + "/data") != 0 ||
      sh("generate --kind video --height 24 --width 24 --frames 30 --square 4 --out " + w + "/video") != 0 ||
      sh("fit --input " + w + "/data/x.csv --d 3 --seed 5 --out " + w + "/model") != 0)
    return {false, "could not prepare inputs"};

  const std::vector<std::pair<std::string, std::string>> commands{
      {"generate-lowrank", "generate --n 300 --p 20 --r 2 --seed 9"},
      {"generate-gaussian", "generate --kind gaussian --n 200 --p 4 --variances 4,3,2,1 --seed 9"},
      {"generate-video", "generate --kind video --height 16 --width 16 --frames 12 --seed 9"},
      {"fit", "fit --input " + w + "/data/x.csv --d 3 --L 40 --seed 11"},
      {"transform", "transform --input " + w + "/data/x.csv --model " + w + "/model/model.json --reconstruct"},
      {"anomaly", "anomaly --input " + w + "/data/x.csv --fraction 0.05 --d 3 --truth " + w +
                      "/data/labels.csv --seed 11"},
      {"bench", "bench --n 300 --p 40 --r 3 --repeats 2 --seed 11"},
      {"background", "background --frames " + w + "/video/frames --d 1 --L 20 --seed 11"},
      {"bounds", "bounds --sample " + w + "/data/x.csv --truth " + w + "/data/labels.csv --d 3 --L 80 --draws 300 "
                 "--seed 11"},
  };
  std::string failed;
  for (const auto& [name, args] : commands) {
    const std::string a = w + "/" + name + "_a", b = w + "/" + name + "_b";
    const int ra = sh(args + " --out " + a), rb = sh(args + " --out " + b);
    if (ra != 0 || rb != 0 || slurp_tree(a) != slurp_tree(b)) failed += " " + name;
  }
  return {failed.empty(), std::to_string(commands.size()) + " subcommand runs repeated" +
                              (failed.empty() ? ", all outputs byte-identical" : "; differing:" + failed)};
}

}  // namespace

// Optional arguments restrict the run to the listed criterion ids.
int main(int argc, char** argv) {
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  // Criterion 4 audits every fit made by the others, so it runs last.
  const std::vector<Criterion> criteria{
      {1, "low-rank recovery benchmark", low_rank_benchmark},
      {2, "planar outliers vs classical PCA", planar_outliers},
      {3, "single-block reduction to PCA", single_block_reduction},
      {5, "median and partition oracles", median_and_partition_oracles},
      {6, "Rademacher complexity bound", rademacher_check},
      {7, "deviation bound consistency proxy", consistency_proxy},
      {8, "anomaly detection properties", anomaly_suite},
      {9, "background separation and PGM I/O", background_suite},
      {10, "CLI determinism", cli_determinism},
      {4, "orthonormality of every iterate", orthonormality_audit_result},
  };
  reset_orthonormality_audit();
  std::vector<std::pair<int, std::string>> lines;
  int failures = 0;
  std::size_t ran = 0;
  for (const Criterion& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    ++ran;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += !o.pass;
    std::ostringstream line;
    line << (o.pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.name << " | " << o.detail << " ["
         << fmt("%.1f", secs) << "s]";
    lines.emplace_back(c.id, line.str());
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& [id, text] : lines) std::printf("%s\n", text.c_str());
  std::printf("%d of %zu criteria passed\n", static_cast<int>(ran) - failures, ran);
  return failures == 0 ? 0 : 1;
}
