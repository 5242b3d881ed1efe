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

// End-to-end training: whiten, build the frozen encoder, ingest
// statistics, solve.

#ifndef RCAE_PIPELINE_H_
#define RCAE_PIPELINE_H_

#include <span>

#include "rcae/checkpoint.h"
#include "rcae/dataset.h"
#include "rcae/model.h"
#include "rcae/objective.h"
#include "rcae/solver.h"
#include "rcae/stats.h"
#include "rcae/whitening.h"

namespace rcae {

struct PipelineParams {
  ModelDims dims;
  EncoderSpec encoder;
  WhitenConfig whiten;
  SolverConfig solver;
  // Threads used to lift images to spectra; 0 = hardware concurrency.
  int ingest_workers = 1;

  void Validate() const;
};

// Lifts `images` concurrently and absorbs them in input order, so the
// result does not depend on `workers`.
SufficientStats IngestInto(SufficientStats stats, std::span<const Image> images,
                           const EncoderParams& enc, int workers = 1);
SufficientStats Ingest(std::span<const Image> images, const EncoderParams& enc, StatsMode mode,
                       int workers = 1);

// Lifted samples in input order.
std::vector<SpectralSample> LiftAll(std::span<const Image> images, const EncoderParams& enc,
                                    int workers = 1);

struct TrainResult {
  EncoderParams encoder;
  WhiteningModel whitening;
  SufficientStats stats;
  SolveResult solve;

  Checkpoint ToCheckpoint(const PipelineParams& params) const;
};

// Fits whitening on `train`, ingests it and solves.
TrainResult Train(const Dataset& train, const PipelineParams& params);

// Solves from previously ingested statistics.
TrainResult TrainFromStats(const StatsSnapshot& snapshot, const PipelineParams& params);

}  // namespace rcae

#endif  // RCAE_PIPELINE_H_
