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

// Tests for configuration handling and the command implementations.

#include <cstdlib>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.h"
#include "rcae/checkpoint.h"
#include "rcae/image_io.h"
#include "rcae/metrics.h"
#include "scratch.h"

namespace rcae::cli {
namespace {

using rcae::testing::ReadFile;
using rcae::testing::ScratchDir;
using rcae::testing::WriteFile;

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an rcae::Error";
  return ErrorCode::kIoError;
}

RunConfig SmallConfig(const std::string& train) {
  RunConfig c = Preset("desk");
  c.params.dims = ModelDims{16, 4, 1, 4};
  c.params.solver.cycles = 3;
  c.params.solver.workers = 1;
  c.params.ingest_workers = 1;
  c.data.train = train;
  return c;
}

TEST(ConfigTest, TextRoundTrip) {
  RunConfig c = Preset("paper");
  c.params.solver.partition = BinPartition::kRoundRobin;
  c.params.whiten.method = WhitenMethod::kStandardize;
  c.data.train = "synth:gabor-textures,n=3";
  c.sweep.grid = {1, 2, 3};
  c.inference.orientation = FilterOrientation::kRotate180;
  c.filter_grid.grid_cols = 7;
  EXPECT_EQ(ConfigFromText(ConfigToText(c)), c);
  EXPECT_EQ(ConfigToText(ConfigFromText(ConfigToText(c))), ConfigToText(c));
}

TEST(ConfigTest, CommentsAndPresetBase) {
  const RunConfig c = ConfigFromText(R"({
    // start from the large preset
    "preset": "paper",
    /* then override one field */
    "solver": {"lambda": 2.5}
  })");
  EXPECT_EQ(c.params.dims, Preset("paper").params.dims);
  EXPECT_EQ(c.params.solver.lambda, 2.5);
  EXPECT_EQ(c.params.solver.mode, StatsMode::kLiteral);
}

TEST(ConfigTest, Rejections) {
  EXPECT_EQ(CodeOf([] { ConfigFromText(R"({"solver": {"lamda": 1}})"); }), ErrorCode::kInvalidConfig);
  EXPECT_EQ(CodeOf([] { ConfigFromText(R"({"bogus": 1})"); }), ErrorCode::kInvalidConfig);
  EXPECT_EQ(CodeOf([] { ConfigFromText(R"({"solver": {"lambda": "big"}})"); }), ErrorCode::kInvalidConfig);
  EXPECT_EQ(CodeOf([] { ConfigFromText("{not json"); }), ErrorCode::kInvalidConfig);
  EXPECT_EQ(CodeOf([] { Preset("laptop"); }), ErrorCode::kInvalidConfig);
}

TEST(ConfigTest, Presets) {
  const RunConfig desk = Preset("desk");
  EXPECT_EQ(desk.params.dims, (ModelDims{64, 8, 1, 32}));
  EXPECT_EQ(desk.params.solver.mode, StatsMode::kExact);
  const RunConfig paper = Preset("paper");
  EXPECT_EQ(paper.params.dims, (ModelDims{244, 8, 1, 300}));
  EXPECT_EQ(paper.params.solver.lambda, 16.5);
  EXPECT_EQ(paper.params.solver.cycles, 1);
  EXPECT_EQ(paper.params.encoder.sigma_a, 0.1);
  EXPECT_EQ(paper.params.encoder.sigma_b, 0.01);
}

TEST(ConfigTest, EnvironmentOverrides) {
  RunConfig c = Preset("desk");
  c.data.train = "from-file";
  ::setenv("RCAE_DATA_DIR", "/env/train", 1);
  ::setenv("RCAE_OUT_DIR", "/env/out", 1);
  ::unsetenv("RCAE_EVAL_DIR");
  ApplyEnvOverrides(c);
  ::unsetenv("RCAE_DATA_DIR");
  ::unsetenv("RCAE_OUT_DIR");
  EXPECT_EQ(c.data.train, "/env/train");
  EXPECT_EQ(c.out_dir, "/env/out");
  EXPECT_EQ(c.data.eval, "");
}

TEST(CliTest, ExitCodesByCategory) {
  std::ostringstream out, err;
  EXPECT_EQ(ReportFailure(Error(ErrorCode::kInvalidDims, "x"), err), kExitConfig);
  EXPECT_EQ(ReportFailure(Error(ErrorCode::kDecodeFailure, "x"), err), kExitData);
  EXPECT_EQ(ReportFailure(Error(ErrorCode::kDivisionByZero, "x"), err), kExitSolve);

  ScratchDir dir("cli_exit");
  TrainArgs bad{SmallConfig((dir / "missing").string()), dir / "m.rcae", {}, {}};
  EXPECT_EQ(CmdTrain(bad, out, err), kExitData);
  bad.config.params.dims.filter_size = 40;
  EXPECT_EQ(CmdTrain(bad, out, err), kExitConfig);
  EXPECT_EQ(CmdReconstruct(ReconstructArgs{dir / "none.rcae", dir / "x.pgm", dir / "o.pgm"}, out, err),
            kExitData);
  EXPECT_FALSE(std::filesystem::exists(dir / "m.rcae"));
}

TEST(CliTest, TrainIsBitwiseReproducible) {
  ScratchDir dir("cli_repro");
  std::ostringstream out, err;
  const RunConfig c = SmallConfig("synth:gaussian-blobs,n=6,seed=3");
  ASSERT_EQ(CmdTrain(TrainArgs{c, dir / "a.rcae", dir / "a.stats", {}}, out, err), kExitOk) << err.str();
  ASSERT_EQ(CmdTrain(TrainArgs{c, dir / "b.rcae", {}, {}}, out, err), kExitOk) << err.str();
  EXPECT_EQ(ReadFile(dir / "a.rcae"), ReadFile(dir / "b.rcae"));
  ASSERT_EQ(CmdTrain(TrainArgs{c, dir / "c.rcae", {}, dir / "a.stats"}, out, err), kExitOk) << err.str();
  EXPECT_EQ(ReadFile(dir / "a.rcae"), ReadFile(dir / "c.rcae"));

  // The metadata file alone is enough to rerun the training.
  const RunConfig rerun = LoadConfig(dir / "a.rcae.meta.json");
  EXPECT_EQ(rerun, c);
  ASSERT_EQ(CmdTrain(TrainArgs{rerun, dir / "d.rcae", {}, {}}, out, err), kExitOk) << err.str();
  EXPECT_EQ(ReadFile(dir / "a.rcae"), ReadFile(dir / "d.rcae"));
  EXPECT_EQ(ReadFile(dir / "a.rcae.meta.json"), ReadFile(dir / "d.rcae.meta.json"));
}

TEST(CliTest, EncodeReconstructAndExport) {
  ScratchDir dir("cli_use");
  std::ostringstream out, err;
  const RunConfig c = SmallConfig("synth:gabor-textures,n=5,seed=1");
  ASSERT_EQ(CmdTrain(TrainArgs{c, dir / "m.rcae", {}, {}}, out, err), kExitOk) << err.str();
  const Dataset one = SynthDataset(SynthSpec{SynthKind::kGaborTextures, 1, 16, 1, 99});
  WritePgm(dir / "in.pgm", NormalizeMinMax(one.images[0].channels[0]));

  EncodeArgs enc{dir / "m.rcae", dir / "in.pgm", dir / "f.bin", {}, "container", false};
  ASSERT_EQ(CmdEncode(enc, out, err), kExitOk) << err.str();
  const std::vector<RealPlane> maps = LoadFeatureMaps(dir / "f.bin");
  ASSERT_EQ(maps.size(), 4u);
  EXPECT_EQ(maps[0].dims(), (PlaneDims{13, 13}));
  enc.inference.crop_to_support = false;
  ASSERT_EQ(CmdEncode(enc, out, err), kExitOk) << err.str();
  EXPECT_EQ(LoadFeatureMaps(dir / "f.bin")[0].dims(), (PlaneDims{1, 1}));

  ASSERT_EQ(CmdReconstruct(ReconstructArgs{dir / "m.rcae", dir / "in.pgm", dir / "r.pgm"}, out, err),
            kExitOk) << err.str();
  EXPECT_EQ(ReadPnm(dir / "r.pgm").channels[0].dims(), (PlaneDims{16, 34}));

  ASSERT_EQ(CmdExportFilters(ExportArgs{dir / "m.rcae", dir / "g.pgm", {}}, out, err), kExitOk);
  EXPECT_TRUE(std::filesystem::exists(dir / "g.pgm.norms.csv"));

  // A source image of the wrong size is refused unless resampling is asked for.
  WritePgm(dir / "big.pgm", RealPlane(20, 24, 0.3));
  EXPECT_EQ(CmdReconstruct(ReconstructArgs{dir / "m.rcae", dir / "big.pgm", dir / "r2.pgm"}, out, err),
            kExitData);
  EXPECT_EQ(CmdReconstruct(ReconstructArgs{dir / "m.rcae", dir / "big.pgm", dir / "r2.pgm", true}, out, err),
            kExitOk);
}

TEST(CliTest, ZeroFilterReconstructionErrorIsTargetEnergy) {
  ScratchDir dir("cli_zero");
  std::ostringstream out, err;
  Checkpoint ckpt;
  ckpt.dims = ModelDims{8, 3, 1, 2};
  ckpt.whitening.config.method = WhitenMethod::kNone;
  ckpt.filters = DecoderFilters::Zeros(ckpt.dims);
  SaveCheckpoint(ckpt, dir / "z.rcae");
  WritePgm(dir / "one.pgm", RealPlane(8, 8, 1.0));
  ASSERT_EQ(CmdReconstruct(ReconstructArgs{dir / "z.rcae", dir / "one.pgm", dir / "r.pgm"}, out, err),
            kExitOk) << err.str();
  EXPECT_NE(out.str().find("reconstruction error: 64 "), std::string::npos) << out.str();
}

TEST(CliTest, SweepWritesTables) {
  ScratchDir dir("cli_sweep");
  std::ostringstream out, err;
  RunConfig c = SmallConfig("synth:bandlimited-noise,n=8,seed=2");
  c.data.eval = "synth:bandlimited-noise,n=3,seed=2,first=8";
  c.sweep.lambda_points = 4;
  ASSERT_EQ(CmdSweep(SweepArgs{"lambda", c, dir.path()}, out, err), kExitOk) << err.str();
  EXPECT_EQ(ParseCsv(ReadFile(dir / "lambda.csv")).size(), 5u);
  c.sweep.checkpoint_every = 2;
  ASSERT_EQ(CmdSweep(SweepArgs{"convergence", c, dir.path()}, out, err), kExitOk) << err.str();
  EXPECT_EQ(ParseCsv(ReadFile(dir / "convergence.csv")).size(), 5u);
  EXPECT_EQ(CmdSweep(SweepArgs{"sideways", c, dir.path()}, out, err), kExitConfig);
  c.data.eval = c.data.train;
  EXPECT_EQ(CmdSweep(SweepArgs{"lambda", c, dir.path()}, out, err), kExitConfig);
}

}  // namespace
}  // namespace rcae::cli
