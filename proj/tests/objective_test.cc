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

#include "rcae/objective.h"

#include <cmath>

#include <gtest/gtest.h>

#include "oracles.h"
#include "rcae/pipeline.h"
#include "rcae/solver.h"

namespace rcae {
namespace {

using testing::Gen;

double RelDiff(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

DecoderFilters RandomDecoder(Gen& gen, const ModelDims& dims) {
  std::vector<RealPlane> spatial;
  for (int k = 0; k < dims.filters; ++k) spatial.push_back(gen.Plane(dims.image_size, dims.image_size, 0.3));
  return DecoderFilters::FromSpatial(spatial, dims.image_dims());
}

TEST(LossTest, SpectralEqualsSpatial) {
  Gen gen(1);
  for (int trial = 0; trial < 6; ++trial) {
    const int d = gen.Int(3, 10);
    const ModelDims dims{d, gen.Int(1, d), gen.Int(1, 2), gen.Int(1, 3)};
    const EncoderParams enc = InitEncoder(dims, trial, 0.4, 0.1);
    std::vector<Image> batch;
    for (int n = 0; n < 3; ++n) batch.push_back(gen.MakeImage(d, dims.channels));
    const DecoderFilters dec = RandomDecoder(gen, dims);
    const std::vector<SpectralSample> samples = LiftAll(batch, enc);
    const LossBreakdown s = LossSpectral(samples, dec, 0.7);
    const LossBreakdown p = LossSpatial(batch, enc, dec, 0.7);
    EXPECT_LE(RelDiff(s.recon, p.recon), 1e-10);
    EXPECT_LE(RelDiff(s.contractive, p.contractive), 1e-10);
    EXPECT_LE(RelDiff(s.total, p.total), 1e-10);
    EXPECT_EQ(s.n, 3);
    EXPECT_NEAR(s.total, s.recon + 0.7 * s.contractive, 1e-12 * std::abs(s.total));
  }
}

TEST(LossTest, StatsOverloadMatchesBatch) {
  Gen gen(2);
  const ModelDims dims{6, 2, 1, 2};
  const EncoderParams enc = InitEncoder(dims, 2);
  std::vector<Image> batch = {gen.MakeImage(6, 1), gen.MakeImage(6, 1)};
  const SufficientStats st = Ingest(batch, enc, StatsMode::kExact);
  const DecoderFilters dec = RandomDecoder(gen, dims);
  EXPECT_EQ(LossSpectral(st, dec, 1.5).total, LossSpectral(LiftAll(batch, enc), dec, 1.5).total);
  try {
    LossSpectral(Ingest(batch, enc, StatsMode::kLiteral), dec, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kModeMismatch);
  }
}

TEST(LossTest, ZeroFiltersGiveTargetEnergy) {
  Gen gen(3);
  const ModelDims dims{5, 2, 2, 2};
  const EncoderParams enc = InitEncoder(dims, 3);
  std::vector<Image> batch = {gen.MakeImage(5, 2), gen.MakeImage(5, 2)};
  double energy = 0.0;
  for (const Image& x : batch) energy += SquaredNorm(ChannelSum(x));
  energy /= 2.0;
  const LossBreakdown l = LossSpectral(LiftAll(batch, enc), DecoderFilters::Zeros(dims), 3.0);
  EXPECT_LE(RelDiff(l.recon, energy), 1e-12);
  EXPECT_EQ(l.contractive, 0.0);
  EXPECT_EQ(l.total, l.recon);
  EXPECT_LE(RelDiff(ReconstructionError(batch, enc, DecoderFilters::Zeros(dims)), energy), 1e-12);
}

TEST(LossTest, LambdaZeroTotalIsRecon) {
  Gen gen(4);
  const ModelDims dims{6, 3, 1, 2};
  const EncoderParams enc = InitEncoder(dims, 4);
  const LossBreakdown l = LossSpectral(LiftAll(std::vector<Image>{gen.MakeImage(6, 1)}, enc),
                                       RandomDecoder(gen, dims), 0.0);
  EXPECT_EQ(l.total, l.recon);
  EXPECT_GT(l.contractive, 0.0);
}

TEST(LossTest, ZeroImageHasNoReconError) {
  Gen gen(5);
  const ModelDims dims{6, 3, 1, 2};
  EncoderParams enc = InitEncoder(dims, 5);
  for (RealPlane& b : enc.biases) b = RealPlane(b.dims());
  const LossBreakdown l = LossSpatial(std::vector<Image>{Image{{RealPlane(6, 6)}}}, enc, RandomDecoder(gen, dims), 1.0);
  EXPECT_EQ(l.recon, 0.0);
  EXPECT_GT(l.contractive, 0.0);
}

TEST(LossTest, ContractiveIgnoresImageForLinearActivation) {
  static const Activation kLinear{"linear", [](double v) { return v; }, [](double, double) { return 1.0; }};
  Gen gen(6);
  const ModelDims dims{6, 2, 1, 2};
  const EncoderParams enc = InitEncoder(dims, 6);
  const SpectralSample a = LiftSample(gen.MakeImage(6, 1), enc, kLinear);
  const SpectralSample b = LiftSample(gen.MakeImage(6, 1, 5.0), enc, kLinear);
  for (int k = 0; k < 2; ++k) EXPECT_EQ(a.D[k], b.D[k]);
  const DecoderFilters dec = RandomDecoder(gen, dims);
  EXPECT_EQ(LossSpectral(std::vector<SpectralSample>{a}, dec, 1.0).contractive,
            LossSpectral(std::vector<SpectralSample>{b}, dec, 1.0).contractive);
}

TEST(LossTest, EmptyBatch) {
  const ModelDims dims{4, 2, 1, 1};
  const EncoderParams enc = InitEncoder(dims, 1);
  const DecoderFilters dec = DecoderFilters::Zeros(dims);
  for (auto call : {+[](const EncoderParams& e, const DecoderFilters& d) { LossSpatial({}, e, d, 1.0); },
                    +[](const EncoderParams& e, const DecoderFilters& d) { ReconstructionError({}, e, d); },
                    +[](const EncoderParams&, const DecoderFilters& d) {
                      LossSpectral(std::span<const SpectralSample>{}, d, 1.0);
                    }}) {
    try {
      call(enc, dec);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kEmptyBatch);
    }
  }
}

TEST(ReconstructionErrorTest, OvercompleteFitBeatsZeroFilters) {
  Gen gen(7);
  const ModelDims dims{4, 1, 1, 16};
  const EncoderParams enc = InitEncoder(dims, 7, 0.5, 0.1);
  const std::vector<Image> batch = {gen.MakeImage(4, 1)};
  SolverConfig cfg;
  cfg.lambda = 1e-6;
  cfg.cycles = 50;
  const DecoderFilters dec = Solve(Ingest(batch, enc, StatsMode::kExact), dims, cfg).filters;
  const double fitted = ReconstructionError(batch, enc, dec);
  const double baseline = ReconstructionError(batch, enc, DecoderFilters::Zeros(dims));
  EXPECT_LT(fitted, 1e-3 * baseline);
}

TEST(ReconstructionErrorTest, FabricatedPerfectTarget) {
  Gen gen(8);
  const ModelDims dims{6, 2, 1, 2};
  const EncoderParams enc = InitEncoder(dims, 8, 0.5, 0.1);
  const Image x = gen.MakeImage(6, 1);
  const DecoderFilters dec = RandomDecoder(gen, dims);
  // Manufacture a sample whose target equals its own reconstruction.
  SpectralSample s = LiftSample(x, enc);
  s.X = ComplexPlane(6, 6);
  for (int k = 0; k < 2; ++k) {
    for (std::size_t b = 0; b < s.X.size(); ++b) s.X.values()[b] += dec.spectral(k).values()[b] * s.H[k].values()[b];
  }
  EXPECT_LE(LossSpectral(std::vector<SpectralSample>{s}, dec, 0.0).recon, 1e-20 * SquaredNorm(s.X));
}

}  // namespace
}  // namespace rcae
