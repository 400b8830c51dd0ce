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

// Command layer behind the `mompca` executable. Kept in the library so tests
// can drive subcommands in-process.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mompca/error.hpp"

namespace mompca::cli {

inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 2,
  kExitNumerical = 3,
  kExitIo = 4,
};

int exit_code_for(ErrorCode code);

/// max(3, 3⌈√N⌉), capped at ⌊N/10⌋ and floored at 1.
std::size_t default_block_count(std::size_t n);

struct BenchOptions {
  std::size_t n = 2000;
  std::size_t p = 500;
  std::size_t r = 10;
  std::size_t d = 0;                    // 0: use r
  std::size_t blocks = 0;               // 0: 3⌊√n⌋
  std::int64_t outliers = -1;           // -1: ⌊√n⌋
  std::size_t repeats = 5;
  std::uint64_t seed = 0;
  bool centering = false;
  double eta_slack = 0.5;               // used by the block-majority check
  bool force = false;                   // run even when the check fails
};

struct BenchRow {
  std::size_t repeat = 0;
  std::uint64_t seed = 0;
  double mompca_error = 0.0;
  double baseline_error = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

struct BenchSummary {
  BenchOptions resolved;
  std::vector<BenchRow> rows;
  double mean_mompca_error = 0.0;
  double mean_baseline_error = 0.0;
};

/// Runs the low-rank-plus-outliers protocol `repeats` times. Repeat k uses
/// seed derive_seed(options.seed, k) for every random draw it makes.
/// The L=1 baseline sees the same data and centering setting.
BenchSummary run_bench(const BenchOptions& options);

/// Full command line including the program name in args[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mompca::cli
