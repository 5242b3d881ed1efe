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

// Command implementations behind the rcae executable. Each command takes
// parsed arguments, writes human-readable output to `out`/`err` and returns
// a process exit status (0 ok, 2 config, 3 data, 4 solve).

#ifndef RCAE_TOOLS_CLI_H_
#define RCAE_TOOLS_CLI_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "rcae/dataset.h"
#include "rcae/export.h"
#include "rcae/model.h"
#include "rcae/pipeline.h"

namespace rcae::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitSolve = 4;

struct DataConfig {
  // Image directory or synth:<kind>[,n=..][,seed=..][,band=..][,first=..].
  std::string train;
  std::string eval;
  std::size_t limit = 0;  // 0 keeps every training image
  std::size_t eval_limit = 0;
  friend bool operator==(const DataConfig&, const DataConfig&) = default;
};

struct SweepConfig {
  std::string variable = "num_filters";
  std::vector<double> grid;  // empty selects the default grid for the variable
  int repeats = 5;
  int warmup = 1;
  int batch_size = 8;
  std::string timing_data = "bandlimited-noise";
  std::uint64_t timing_seed = 7;
  double lambda_min = 0.1;
  double lambda_max = 100.0;
  int lambda_points = 25;
  int checkpoint_every = 50;
  int smoothing_window = 3;
  friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

struct RunConfig {
  std::string preset = "desk";
  PipelineParams params;
  DataConfig data;
  std::string out_dir = "rcae_out";
  SweepConfig sweep;
  InferenceOptions inference;
  FilterGridOptions filter_grid;
};

bool operator==(const RunConfig& a, const RunConfig& b);

// "desk": d=64, w=8, K=32, exact statistics, 10 cycles, lambda=1.
// "paper": d=244, w=8, K=300, lambda=16.5, sigma_a=0.1, sigma_b=0.01,
// one literal cycle. Throws kInvalidConfig for other names.
RunConfig Preset(const std::string& name);

// JSON text form. Parsing accepts // and /* */ comments, starts from the
// preset named by the "preset" key (default "desk") and rejects unknown keys
// with kInvalidConfig. A run metadata file is accepted in place of a config.
std::string ConfigToText(const RunConfig& config);
RunConfig ConfigFromText(const std::string& text);
RunConfig LoadConfig(const std::filesystem::path& path);

// RCAE_DATA_DIR, RCAE_EVAL_DIR and RCAE_OUT_DIR replace data.train,
// data.eval and out_dir when set.
void ApplyEnvOverrides(RunConfig& config);

// Directory or synth: locator, prepared at the configured d and C.
Dataset LoadData(const std::string& locator, const ModelDims& dims, std::size_t limit,
                 std::ostream& warnings);

// Writes `<artifact>.meta.json`: artifact version, command, full config and
// input summary. Contains no timestamps, so reruns write identical files.
void WriteRunMetadata(const std::filesystem::path& artifact, const std::string& command,
                      const RunConfig& config, const std::string& inputs_json);

struct TrainArgs {
  RunConfig config;
  std::filesystem::path out;
  std::filesystem::path save_stats;  // optional
  std::filesystem::path from_stats;  // optional; skips data loading
};

struct ReconstructArgs {
  std::filesystem::path checkpoint;
  std::filesystem::path image;
  std::filesystem::path out;
  bool resample = false;  // otherwise the image must already be d x d
};

struct EncodeArgs {
  std::filesystem::path checkpoint;
  std::filesystem::path image;
  std::filesystem::path out;
  InferenceOptions inference;
  std::string format = "container";  // or "pgm" (maps stacked vertically)
  bool resample = false;
};

struct SweepArgs {
  std::string kind;  // timing | lambda | convergence
  RunConfig config;
  std::filesystem::path out_dir;
};

struct ExportArgs {
  std::filesystem::path checkpoint;
  std::filesystem::path out;
  FilterGridOptions options;
};

int CmdTrain(const TrainArgs& args, std::ostream& out, std::ostream& err);
int CmdReconstruct(const ReconstructArgs& args, std::ostream& out, std::ostream& err);
int CmdEncode(const EncodeArgs& args, std::ostream& out, std::ostream& err);
int CmdSweep(const SweepArgs& args, std::ostream& out, std::ostream& err);
int CmdExportFilters(const ExportArgs& args, std::ostream& out, std::ostream& err);

// Maps an exception to an exit status and prints it to `err`.
int ReportFailure(const std::exception& e, std::ostream& err);

}  // namespace rcae::cli

#endif  // RCAE_TOOLS_CLI_H_
