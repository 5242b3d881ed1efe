// Copyright 2026 The RCAE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Scripted experiment sweeps: CPU-time scaling, regularization sweep and
// filter convergence while streaming training images.

#ifndef RCAE_BENCH_H_
#define RCAE_BENCH_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rcae/dataset.h"
#include "rcae/metrics.h"
#include "rcae/pipeline.h"

namespace rcae {

enum class SweepVariable { kImageSize, kNumFilters, kFilterSize, kLambda, kTrainCount };

const char* SweepVariableName(SweepVariable v);
SweepVariable ParseSweepVariable(const std::string& name);

struct SweepSpec {
  SweepVariable variable = SweepVariable::kNumFilters;
  std::vector<double> grid;
  PipelineParams fixed;
  int repeats = 5;
  int warmup = 1;
  // Synthetic training batch ingested at every grid point.
  int batch_size = 8;
  SynthKind data_kind = SynthKind::kBandlimitedNoise;
  std::uint64_t data_seed = 7;
};

struct FitReport {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  bool degenerate = true;  // fewer than two distinct x values
  std::vector<std::pair<double, double>> points;
};

// Ordinary least-squares line through (xs[i], ys[i]).
FitReport LinearFit(const std::vector<double>& xs, const std::vector<double>& ys);

struct TimingSweepResult {
  FitReport fit;            // time vs d^2, K, w or N
  FitReport secondary_fit;  // time vs w^2 (filter-size sweeps only)
  std::vector<double> medians_ms;
  bool monotone = true;     // medians non-decreasing along the grid
  std::vector<PipelineParams> point_params;
  MetricTable table;        // sweep_var,value,cpu_ms
  std::string summary;
};

// Times ingestion + solve with a single solver worker at each grid point;
// records every repeat and the median.
TimingSweepResult RunTimingSweep(const SweepSpec& spec);

struct LambdaSweepResult {
  std::vector<double> lambdas;
  std::vector<double> errors;
  std::size_t best_index = 0;
  bool interior = false;  // minimum not at either grid end
  MetricTable table;      // lambda,recon_error
  std::string summary;
};

std::vector<double> LogSpace(double lo, double hi, int points);

// Statistics are ingested once and reused for every lambda. Whitening is
// fitted on `train` only.
LambdaSweepResult RunLambdaSweep(const Dataset& train, const Dataset& eval,
                                 const std::vector<double>& grid, const PipelineParams& params);

struct ConvergenceResult {
  std::vector<std::int64_t> n_seen;
  std::vector<double> avg_sq_diff;
  std::vector<double> smoothed;
  double peak = 0.0;
  double final_value = 0.0;
  double settle_ratio = 0.0;  // final / peak
  MetricTable table;          // n_seen,avg_sq_diff,smoothed
  std::string summary;
};

// After every `checkpoint_every` further images, re-solves and records the
// mean squared change of the spatial filters against the previous
// checkpoint (zero filters before the first). `smoothed` is a trailing
// moving average over `smoothing_window` rows.
ConvergenceResult RunConvergenceCurve(const Dataset& stream, int checkpoint_every,
                                      const PipelineParams& params, int smoothing_window = 3);

}  // namespace rcae

#endif  // RCAE_BENCH_H_
