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

// Tests for binary containers, metric tables and visual exports.

#include <cmath>

#include <gtest/gtest.h>

#include "oracles.h"
#include "rcae/checkpoint.h"
#include "rcae/export.h"
#include "rcae/image_io.h"
#include "rcae/metrics.h"
#include "rcae/pipeline.h"
#include "scratch.h"

namespace rcae {
namespace {

using testing::Gen;
using testing::ReadFile;
using testing::ScratchDir;
using testing::WriteFile;

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an rcae::Error";
  return ErrorCode::kIoError;
}

PipelineParams SmallParams(StatsMode mode) {
  PipelineParams params;
  params.dims = ModelDims{12, 3, 2, 4};
  params.solver.mode = mode;
  params.solver.cycles = 2;
  params.solver.lambda = 0.7;
  params.encoder.seed = 21;
  return params;
}

TrainResult SmallTrain(StatsMode mode) {
  const Dataset ds = SynthDataset(SynthSpec{SynthKind::kGaborTextures, 5, 12, 2, 3});
  return Train(ds, SmallParams(mode));
}

TEST(CheckpointTest, RoundTripIsLossless) {
  ScratchDir dir("ckpt");
  const Checkpoint ckpt = SmallTrain(StatsMode::kExact).ToCheckpoint(SmallParams(StatsMode::kExact));
  SaveCheckpoint(ckpt, dir / "m.rcae");
  const Checkpoint back = LoadCheckpoint(dir / "m.rcae");
  EXPECT_EQ(back.dims, ckpt.dims);
  EXPECT_EQ(back.encoder, ckpt.encoder);
  EXPECT_EQ(back.lambda, ckpt.lambda);
  EXPECT_EQ(back.mode, ckpt.mode);
  EXPECT_EQ(back.cycles, ckpt.cycles);
  EXPECT_EQ(back.eps_div, ckpt.eps_div);
  EXPECT_EQ(back.filters, ckpt.filters);
  EXPECT_EQ(back.whitening.mean_amplitude, ckpt.whitening.mean_amplitude);
  EXPECT_EQ(back.whitening.config.reg, ckpt.whitening.config.reg);
  EXPECT_EQ(back.whitening.stats_source, ckpt.whitening.stats_source);
  EXPECT_EQ(back.Encoder(), ckpt.Encoder());
  SaveCheckpoint(back, dir / "again.rcae");
  EXPECT_EQ(ReadFile(dir / "again.rcae"), ReadFile(dir / "m.rcae"));
}

TEST(CheckpointTest, CorruptFilesAreFormatErrors) {
  ScratchDir dir("ckpt_bad");
  const Checkpoint ckpt = SmallTrain(StatsMode::kLiteral).ToCheckpoint(SmallParams(StatsMode::kLiteral));
  SaveCheckpoint(ckpt, dir / "m.rcae");
  const std::string bytes = ReadFile(dir / "m.rcae");

  std::string bad_magic = bytes;
  bad_magic[0] = 'X';
  WriteFile(dir / "magic.rcae", bad_magic);
  EXPECT_EQ(CodeOf([&] { LoadCheckpoint(dir / "magic.rcae"); }), ErrorCode::kFormatError);

  WriteFile(dir / "short.rcae", bytes.substr(0, bytes.size() - 9));
  EXPECT_EQ(CodeOf([&] { LoadCheckpoint(dir / "short.rcae"); }), ErrorCode::kFormatError);

  WriteFile(dir / "tiny.rcae", bytes.substr(0, 5));
  EXPECT_EQ(CodeOf([&] { LoadCheckpoint(dir / "tiny.rcae"); }), ErrorCode::kFormatError);

  EXPECT_EQ(CodeOf([&] { LoadCheckpoint(dir / "none.rcae"); }), ErrorCode::kUnreadablePath);

  SaveFeatureMaps({RealPlane(2, 2, 1.0)}, dir / "f.bin");
  EXPECT_EQ(CodeOf([&] { LoadCheckpoint(dir / "f.bin"); }), ErrorCode::kFormatError);
}

TEST(StatsSnapshotTest, RoundTripBothModes) {
  ScratchDir dir("snap");
  for (StatsMode mode : {StatsMode::kLiteral, StatsMode::kExact}) {
    const TrainResult r = SmallTrain(mode);
    StatsSnapshot snap{r.stats, EncoderSpec{21, 0.1, 0.01}, r.whitening};
    SaveStatsSnapshot(snap, dir / "s.bin");
    const StatsSnapshot back = LoadStatsSnapshot(dir / "s.bin");
    EXPECT_EQ(back.stats.mode, mode);
    EXPECT_EQ(back.stats.dims, r.stats.dims);
    EXPECT_EQ(back.stats.n_seen, r.stats.n_seen);
    EXPECT_EQ(back.stats.H_sum, r.stats.H_sum);
    EXPECT_EQ(back.stats.X_sum, r.stats.X_sum);
    EXPECT_EQ(back.stats.D_sum, r.stats.D_sum);
    ASSERT_EQ(back.stats.samples.size(), r.stats.samples.size());
    for (std::size_t i = 0; i < back.stats.samples.size(); ++i) {
      EXPECT_EQ(*back.stats.samples[i], *r.stats.samples[i]);
    }
    EXPECT_EQ(back.encoder, snap.encoder);
    EXPECT_EQ(back.whitening.mean_amplitude, r.whitening.mean_amplitude);
    const SolveResult a = Solve(r.stats, r.stats.dims, SolverConfig{0.7, 2, 1e-12, mode});
    const SolveResult b = Solve(back.stats, back.stats.dims, SolverConfig{0.7, 2, 1e-12, mode});
    EXPECT_EQ(a.filters, b.filters);
  }
}

TEST(FeatureMapsTest, RoundTrip) {
  ScratchDir dir("feat");
  Gen gen(4);
  std::vector<RealPlane> maps;
  for (int k = 0; k < 3; ++k) maps.push_back(gen.Plane(5, 5));
  maps[1](2, 2) = -0.0;
  maps[2](0, 0) = 1e-308;
  SaveFeatureMaps(maps, dir / "f.bin");
  const std::vector<RealPlane> back = LoadFeatureMaps(dir / "f.bin");
  ASSERT_EQ(back.size(), maps.size());
  for (std::size_t k = 0; k < maps.size(); ++k) {
    for (std::size_t i = 0; i < maps[k].size(); ++i) {
      EXPECT_EQ(std::signbit(back[k].values()[i]), std::signbit(maps[k].values()[i]));
      EXPECT_EQ(back[k].values()[i], maps[k].values()[i]);
    }
  }
  EXPECT_EQ(CodeOf([&] { SaveFeatureMaps({RealPlane(2, 2), RealPlane(3, 3)}, dir / "g.bin"); }),
            ErrorCode::kDimMismatch);
}

TEST(MetricsTest, CsvLayoutAndQuoting) {
  MetricTable t({"name", "n", "value"});
  t.AddRow({std::string("plain"), std::int64_t{3}, 0.1});
  t.AddRow({std::string("has,comma \"q\""), std::int64_t{-1}, 1.0 / 3.0});
  const std::string csv = FormatCsv(t);
  const auto rows = ParseCsv(csv);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"name", "n", "value"}));
  EXPECT_EQ(rows[2][0], "has,comma \"q\"");
  EXPECT_EQ(rows[1][1], "3");
  EXPECT_EQ(std::stod(rows[2][2]), 1.0 / 3.0);
  EXPECT_EQ(std::stod(rows[1][2]), 0.1);
  EXPECT_NE(csv.find("\"has,comma \"\"q\"\"\""), std::string::npos);
}

TEST(MetricsTest, EmptyTableIsHeaderOnly) {
  ScratchDir dir("metrics");
  MetricTable t({"a", "b"});
  ExportMetrics(t, dir / "m.csv");
  EXPECT_EQ(ReadFile(dir / "m.csv"), "a,b\r\n");
  EXPECT_EQ(CodeOf([&] { t.AddRow({1.0}); }), ErrorCode::kInvalidSpec);
}

TEST(MetricsTest, DoublesRoundTripProperty) {
  Gen gen(12);
  for (int i = 0; i < 500; ++i) {
    const double v = gen.Normal() * std::pow(10.0, gen.Int(-200, 200));
    EXPECT_EQ(std::stod(FormatDouble(v)), v);
  }
}

TEST(ExportTest, LargeFilterBankGrid) {
  ScratchDir dir("export_grid");
  Gen gen(2);
  std::vector<RealPlane> spatial;
  for (int k = 0; k < 300; ++k) spatial.push_back(gen.Plane(6, 6));
  const DecoderFilters dec = DecoderFilters::FromSpatial(spatial, PlaneDims{6, 6});
  const FilterGridInfo info = ExportFilters(dec, dir / "grid.pgm", FilterGridOptions{20, 15});
  EXPECT_EQ(info.tiles, 300);
  EXPECT_EQ(info.grid_cols, 20);
  EXPECT_EQ(info.grid_rows, 15);
  const Image img = ReadPnm(dir / "grid.pgm");
  EXPECT_EQ(img.channels[0].dims(), (PlaneDims{15 * 6 + 14, 20 * 6 + 19}));
  const auto norms = ParseCsv(ReadFile(dir / "grid.pgm.norms.csv"));
  ASSERT_EQ(norms.size(), 301u);
  EXPECT_EQ(norms[0], (std::vector<std::string>{"filter", "l2_norm"}));
  double direct = 0.0;
  const RealPlane seventh = dec.Spatial(7);
  for (double v : seventh.values()) direct += v * v;
  EXPECT_NEAR(std::stod(norms[8][1]), std::sqrt(direct), 1e-12 * std::sqrt(direct));
}

TEST(ExportTest, ConstantTileIsMidGrayAndGridMustFit) {
  const RealPlane grid = TileGrid({RealPlane(3, 3, 4.0)}, 1, 1, 0);
  EXPECT_EQ(grid, RealPlane(3, 3, 0.5));
  EXPECT_EQ(CodeOf([] { TileGrid(std::vector<RealPlane>(5, RealPlane(2, 2)), 2, 2, 1); }),
            ErrorCode::kInvalidSpec);
}

TEST(ExportTest, CropToSupport) {
  ScratchDir dir("export_crop");
  const DecoderFilters dec = DecoderFilters::Zeros(ModelDims{8, 3, 1, 4});
  FilterGridOptions opts;
  opts.crop_to_support = true;
  opts.support = 3;
  const FilterGridInfo info = ExportFilters(dec, dir / "c.pgm", opts);
  EXPECT_EQ(info.tile_size, 3);
  EXPECT_EQ(info.grid_cols, 2);
  EXPECT_EQ(ReadPnm(dir / "c.pgm").channels[0].dims(), (PlaneDims{7, 7}));
}

TEST(ExportTest, SideBySide) {
  const RealPlane s = SideBySide(RealPlane(2, 2, 0.0), RealPlane(2, 2, 2.0), 1);
  EXPECT_EQ(s.dims(), (PlaneDims{2, 5}));
  EXPECT_EQ(s(0, 0), 0.0);
  EXPECT_EQ(s(1, 4), 1.0);
}

}  // namespace
}  // namespace rcae
