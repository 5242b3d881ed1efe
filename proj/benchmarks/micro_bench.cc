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

// Microbenchmarks for the hot paths: transforms, encoding, lifting and the
// per-bin solve.

#include <random>

#include <benchmark/benchmark.h>

#include "rcae/pipeline.h"

namespace rcae {
namespace {

RealPlane RandomPlane(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  RealPlane p(rows, cols);
  for (double& v : p.values()) v = normal(rng);
  return p;
}

Image RandomImage(int d, std::uint64_t seed) { return Image{{RandomPlane(d, d, seed)}}; }

void BM_Dft2(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const RealPlane p = RandomPlane(d, d, 1);
  for (auto _ : state) benchmark::DoNotOptimize(Dft2(p));
}
BENCHMARK(BM_Dft2)->Arg(32)->Arg(64)->Arg(128)->Arg(244);

void BM_Idft2(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const ComplexPlane f = Dft2(RandomPlane(d, d, 2));
  for (auto _ : state) benchmark::DoNotOptimize(Idft2(f));
}
BENCHMARK(BM_Idft2)->Arg(32)->Arg(64)->Arg(128)->Arg(244);

void BM_Encode(benchmark::State& state) {
  const ModelDims dims{64, 8, 1, static_cast<int>(state.range(0))};
  const EncoderParams enc = InitEncoder(dims, 3);
  const Image x = RandomImage(64, 4);
  for (auto _ : state) benchmark::DoNotOptimize(Encode(x, enc));
}
BENCHMARK(BM_Encode)->Arg(8)->Arg(32)->Arg(128);

void BM_LiftSample(benchmark::State& state) {
  const ModelDims dims{64, 8, 1, static_cast<int>(state.range(0))};
  const EncoderParams enc = InitEncoder(dims, 5);
  const std::vector<ComplexPlane> spectra = FilterSpectra(enc);
  const Image x = RandomImage(64, 6);
  for (auto _ : state) benchmark::DoNotOptimize(LiftSample(x, enc, spectra));
}
BENCHMARK(BM_LiftSample)->Arg(8)->Arg(32)->Arg(128);

void BM_Solve(benchmark::State& state) {
  const StatsMode mode = state.range(1) == 0 ? StatsMode::kLiteral : StatsMode::kExact;
  const ModelDims dims{64, 8, 1, static_cast<int>(state.range(0))};
  const EncoderParams enc = InitEncoder(dims, 7);
  std::vector<Image> images;
  for (int i = 0; i < 16; ++i) images.push_back(RandomImage(64, 100 + i));
  const SufficientStats stats = Ingest(images, enc, mode);
  SolverConfig cfg;
  cfg.mode = mode;
  cfg.cycles = 1;
  for (auto _ : state) benchmark::DoNotOptimize(Solve(stats, dims, cfg));
}
BENCHMARK(BM_Solve)->ArgsProduct({{8, 32, 128}, {0, 1}})->ArgNames({"K", "exact"});

}  // namespace
}  // namespace rcae

BENCHMARK_MAIN();
