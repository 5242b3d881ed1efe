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

#include "rcae/pipeline.h"

#include <algorithm>
#include <exception>
#include <thread>

namespace rcae {
namespace {

int ResolveWorkers(int workers) {
  if (workers > 0) return workers;
  return std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
}

}  // namespace

void PipelineParams::Validate() const {
  dims.Validate();
  whiten.Validate();
  solver.Validate();
  if (!(encoder.sigma_a > 0.0) || !(encoder.sigma_b > 0.0)) {
    throw Error(ErrorCode::kInvalidSigma, "encoder standard deviations must be positive");
  }
  if (ingest_workers < 0) throw Error(ErrorCode::kInvalidConfig, "ingest_workers must be >= 0");
}

std::vector<SpectralSample> LiftAll(std::span<const Image> images, const EncoderParams& enc,
                                    int workers) {
  const std::vector<ComplexPlane> spectra = FilterSpectra(enc);
  std::vector<SpectralSample> out(images.size());
  const int threads = std::min<int>(ResolveWorkers(workers), std::max<std::size_t>(images.size(), 1));
  std::vector<std::exception_ptr> errors(threads);
  auto work = [&](int t) {
    try {
      for (std::size_t i = t; i < images.size(); i += threads) {
        out[i] = LiftSample(images[i], enc, spectra);
      }
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  {
    std::vector<std::jthread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(work, t);
    work(0);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

SufficientStats IngestInto(SufficientStats stats, std::span<const Image> images,
                           const EncoderParams& enc, int workers) {
  if (!(stats.dims == enc.dims)) throw Error(ErrorCode::kDimMismatch, "stats and encoder dims differ");
  // Bounded chunks keep literal-mode memory independent of the batch size.
  const std::size_t chunk = static_cast<std::size_t>(ResolveWorkers(workers)) * 4;
  for (std::size_t begin = 0; begin < images.size(); begin += chunk) {
    const std::size_t end = std::min(images.size(), begin + chunk);
    std::vector<SpectralSample> lifted = LiftAll(images.subspan(begin, end - begin), enc, workers);
    for (SpectralSample& s : lifted) stats = Absorb(std::move(stats), std::move(s));
  }
  return stats;
}

SufficientStats Ingest(std::span<const Image> images, const EncoderParams& enc, StatsMode mode,
                       int workers) {
  return IngestInto(SufficientStats::Empty(enc.dims, mode), images, enc, workers);
}

Checkpoint TrainResult::ToCheckpoint(const PipelineParams& params) const {
  Checkpoint ckpt;
  ckpt.dims = params.dims;
  ckpt.encoder = params.encoder;
  ckpt.lambda = params.solver.lambda;
  ckpt.mode = params.solver.mode;
  ckpt.cycles = params.solver.cycles;
  ckpt.eps_div = params.solver.eps_div;
  ckpt.whitening = whitening;
  ckpt.filters = solve.filters;
  return ckpt;
}

TrainResult Train(const Dataset& train, const PipelineParams& params) {
  params.Validate();
  if (train.empty()) throw Error(ErrorCode::kEmptyDataset, "no training images");
  TrainResult result;
  result.whitening = FitWhitening(train, params.whiten);
  const Dataset white = ApplyWhitening(train, result.whitening);
  result.encoder = InitEncoder(params.dims, params.encoder.seed, params.encoder.sigma_a,
                               params.encoder.sigma_b);
  result.stats = Ingest(white.images, result.encoder, params.solver.mode, params.ingest_workers);
  result.solve = Solve(result.stats, params.dims, params.solver);
  return result;
}

TrainResult TrainFromStats(const StatsSnapshot& snapshot, const PipelineParams& params) {
  params.Validate();
  if (!(snapshot.stats.dims == params.dims) || !(snapshot.encoder == params.encoder)) {
    throw Error(ErrorCode::kDimMismatch, "stats snapshot was built for another model");
  }
  TrainResult result;
  result.whitening = snapshot.whitening;
  result.encoder = InitEncoder(params.dims, params.encoder.seed, params.encoder.sigma_a,
                               params.encoder.sigma_b);
  result.stats = snapshot.stats;
  result.solve = Solve(result.stats, params.dims, params.solver);
  return result;
}

}  // namespace rcae
