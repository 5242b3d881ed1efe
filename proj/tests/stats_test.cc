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

#include "rcae/stats.h"

#include <cmath>

#include <gtest/gtest.h>

#include "oracles.h"
#include "rcae/pipeline.h"
#include "rcae/solver.h"

namespace rcae {
namespace {

using testing::Gen;
using testing::MaxAbs;
using testing::MaxAbsDiff;
using testing::RelativeError;

void ExpectConjugateSymmetric(const ComplexPlane& p, double tol) {
  const double scale = std::max(1.0, MaxAbs(p));
  for (int u = 0; u < p.rows(); ++u) {
    for (int v = 0; v < p.cols(); ++v) {
      const Complex m = p((p.rows() - u) % p.rows(), (p.cols() - v) % p.cols());
      ASSERT_LE(std::abs(p(u, v) - std::conj(m)), tol * scale);
    }
  }
}

TEST(LiftSampleTest, ZeroImageZeroBias) {
  const ModelDims dims{6, 3, 1, 2};
  EncoderParams enc = InitEncoder(dims, 1);
  for (RealPlane& b : enc.biases) b = RealPlane(b.dims());
  const SpectralSample s = LiftSample(Image{{RealPlane(6, 6)}}, enc);
  const ComplexPlane ones = Dft2(PadTo(RealPlane(4, 4, 1.0), {6, 6}));
  for (int k = 0; k < 2; ++k) {
    EXPECT_EQ(MaxAbs(s.H[k]), 0.0);
    const ComplexPlane want = Hadamard(ones, Dft2(PadTo(enc.filters[k], {6, 6})));
    EXPECT_LE(MaxAbsDiff(s.D[k], want), 1e-12);
  }
  EXPECT_EQ(MaxAbs(s.X), 0.0);
}

TEST(LiftSampleTest, DeltaFilterGivesSpectrumOfTanh) {
  const ModelDims dims{5, 1, 1, 1};
  EncoderParams enc;
  enc.dims = dims;
  enc.filters = {RealPlane::FromRows({{1}})};
  enc.biases = {RealPlane(5, 5)};
  const RealPlane x = Gen(1).Plane(5, 5);
  RealPlane t = x;
  for (double& v : t.values()) v = std::tanh(v);
  EXPECT_LE(MaxAbsDiff(LiftSample(Image{{x}}, enc).H[0], Dft2(t)), 1e-12);
}

TEST(LiftSampleTest, MatchesLoopOracle) {
  Gen gen(2);
  for (int channels : {1, 2}) {
    const ModelDims dims{7, 3, channels, 3};
    const EncoderParams enc = InitEncoder(dims, 9, 0.4, 0.1);
    const Image x = gen.MakeImage(7, channels);
    const SpectralSample got = LiftSample(x, enc);
    const SpectralSample want = testing::DirectLift(x, enc);
    EXPECT_LE(RelativeError(got.X, want.X), 1e-12);
    for (int k = 0; k < 3; ++k) {
      EXPECT_LE(RelativeError(got.H[k], want.H[k]), 1e-12);
      EXPECT_LE(RelativeError(got.D[k], want.D[k]), 1e-12);
    }
  }
}

TEST(LiftSampleTest, PlanesAreConjugateSymmetric) {
  const ModelDims dims{9, 4, 1, 2};
  const SpectralSample s = LiftSample(Gen(3).MakeImage(9, 1), InitEncoder(dims, 2, 0.5, 0.1));
  ExpectConjugateSymmetric(s.X, 1e-12);
  for (int k = 0; k < 2; ++k) {
    ExpectConjugateSymmetric(s.H[k], 1e-12);
    ExpectConjugateSymmetric(s.D[k], 1e-12);
  }
}

TEST(LiftSampleTest, DimMismatch) {
  const EncoderParams enc = InitEncoder({8, 3, 1, 2}, 1);
  try {
    LiftSample(Gen(4).MakeImage(9, 1), enc);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimMismatch);
  }
}

class StatsFixture : public ::testing::Test {
 protected:
  const ModelDims dims{6, 2, 1, 2};
  EncoderParams enc = InitEncoder(dims, 3, 0.3, 0.05);
  Gen gen{5};

  std::vector<SpectralSample> Samples(int n) {
    std::vector<SpectralSample> out;
    for (int i = 0; i < n; ++i) out.push_back(LiftSample(gen.MakeImage(6, 1), enc));
    return out;
  }
};

TEST_F(StatsFixture, AbsorbIntoEmptyEqualsSample) {
  const SpectralSample s = Samples(1).front();
  for (StatsMode mode : {StatsMode::kLiteral, StatsMode::kExact}) {
    const SufficientStats st = Absorb(SufficientStats::Empty(dims, mode), s);
    EXPECT_EQ(st.n_seen, 1);
    EXPECT_EQ(st.H_sum, s.H);
    EXPECT_EQ(st.X_sum, s.X);
    EXPECT_EQ(st.D_sum, s.D);
    EXPECT_EQ(st.samples.size(), mode == StatsMode::kExact ? 1u : 0u);
  }
}

TEST_F(StatsFixture, AbsorbTwiceDoubles) {
  const SpectralSample s = Samples(1).front();
  const SufficientStats st = Absorb(Absorb(SufficientStats::Empty(dims, StatsMode::kLiteral), s), s);
  for (std::size_t i = 0; i < s.X.size(); ++i) EXPECT_EQ(st.X_sum.values()[i], 2.0 * s.X.values()[i]);
  for (int k = 0; k < 2; ++k) {
    for (std::size_t i = 0; i < s.X.size(); ++i) {
      EXPECT_EQ(st.H_sum[k].values()[i], 2.0 * s.H[k].values()[i]);
      EXPECT_EQ(st.D_sum[k].values()[i], 2.0 * s.D[k].values()[i]);
    }
  }
}

TEST_F(StatsFixture, SumsMatchBatchOracle) {
  const std::vector<SpectralSample> batch = Samples(10);
  SufficientStats st = SufficientStats::Empty(dims, StatsMode::kExact);
  for (const SpectralSample& s : batch) st = Absorb(std::move(st), s);
  EXPECT_EQ(st.n_seen, 10);
  for (int k = 0; k < 2; ++k) {
    ComplexPlane want(6, 6);
    for (const SpectralSample& s : batch) {
      for (std::size_t i = 0; i < want.size(); ++i) want.values()[i] += s.H[k].values()[i];
    }
    EXPECT_LE(MaxAbsDiff(st.H_sum[k], want), 1e-12 * std::max(1.0, MaxAbs(want)));
    ExpectConjugateSymmetric(st.H_sum[k], 1e-9);
    ExpectConjugateSymmetric(st.D_sum[k], 1e-9);
  }
}

TEST_F(StatsFixture, AbsorbDimMismatch) {
  const ModelDims other{7, 2, 1, 2};
  const SpectralSample s = LiftSample(gen.MakeImage(7, 1), InitEncoder(other, 1));
  try {
    Absorb(SufficientStats::Empty(dims, StatsMode::kExact), s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimMismatch);
  }
}

TEST_F(StatsFixture, MergeIdentityAndErrors) {
  SufficientStats a = SufficientStats::Empty(dims, StatsMode::kExact);
  for (const SpectralSample& s : Samples(3)) a = Absorb(std::move(a), s);
  const SufficientStats m = Merge(a, SufficientStats::Empty(dims, StatsMode::kExact));
  EXPECT_EQ(m.n_seen, 3);
  EXPECT_EQ(m.H_sum, a.H_sum);
  EXPECT_EQ(m.samples, a.samples);
  try {
    Merge(a, SufficientStats::Empty(dims, StatsMode::kLiteral));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kModeMismatch);
  }
  try {
    Merge(a, SufficientStats::Empty({6, 3, 1, 2}, StatsMode::kExact));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimMismatch);
  }
}

TEST_F(StatsFixture, MergeCommutesUnderSolve) {
  const std::vector<SpectralSample> batch = Samples(6);
  SufficientStats a = SufficientStats::Empty(dims, StatsMode::kExact);
  SufficientStats b = a;
  for (int i = 0; i < 4; ++i) a = Absorb(std::move(a), batch[i]);
  for (int i = 4; i < 6; ++i) b = Absorb(std::move(b), batch[i]);
  SolverConfig cfg;
  cfg.lambda = 0.5;
  cfg.cycles = 5;
  const DecoderFilters ab = Solve(Merge(a, b), dims, cfg).filters;
  const DecoderFilters ba = Solve(Merge(b, a), dims, cfg).filters;
  for (int k = 0; k < 2; ++k) {
    EXPECT_LE(MaxAbsDiff(ab.spectral(k), ba.spectral(k)), 1e-12 * std::max(1.0, MaxAbs(ab.spectral(k))));
  }
}

TEST_F(StatsFixture, ShardedIngestionMatchesSequential) {
  std::vector<Image> images;
  for (int i = 0; i < 12; ++i) images.push_back(gen.MakeImage(6, 1));
  for (StatsMode mode : {StatsMode::kLiteral, StatsMode::kExact}) {
    const SufficientStats seq = Ingest(images, enc, mode, 1);
    SufficientStats merged = SufficientStats::Empty(dims, mode);
    for (int shard = 0; shard < 3; ++shard) {
      const std::span<const Image> part(images.data() + 4 * shard, 4);
      merged = Merge(std::move(merged), Ingest(part, enc, mode, 1));
    }
    EXPECT_EQ(merged.n_seen, 12);
    SolverConfig cfg;
    cfg.mode = mode;
    cfg.lambda = 1.0;
    const DecoderFilters a = Solve(seq, dims, cfg).filters;
    const DecoderFilters b = Solve(merged, dims, cfg).filters;
    for (int k = 0; k < 2; ++k) {
      EXPECT_LE(MaxAbsDiff(a.spectral(k), b.spectral(k)), 1e-12 * std::max(1.0, MaxAbs(a.spectral(k))));
    }
  }
}

TEST_F(StatsFixture, ParallelIngestionIsBitwiseEqual) {
  std::vector<Image> images;
  for (int i = 0; i < 9; ++i) images.push_back(gen.MakeImage(6, 1));
  const SufficientStats one = Ingest(images, enc, StatsMode::kExact, 1);
  const SufficientStats four = Ingest(images, enc, StatsMode::kExact, 4);
  EXPECT_EQ(one.H_sum, four.H_sum);
  EXPECT_EQ(one.X_sum, four.X_sum);
  EXPECT_EQ(one.D_sum, four.D_sum);
  ASSERT_EQ(one.samples.size(), four.samples.size());
  for (std::size_t i = 0; i < one.samples.size(); ++i) EXPECT_EQ(*one.samples[i], *four.samples[i]);
}

TEST(StatsModeTest, Names) {
  EXPECT_EQ(ParseStatsMode("literal"), StatsMode::kLiteral);
  EXPECT_EQ(ParseStatsMode(StatsModeName(StatsMode::kExact)), StatsMode::kExact);
  EXPECT_THROW(ParseStatsMode("approximate"), Error);
}

}  // namespace
}  // namespace rcae
