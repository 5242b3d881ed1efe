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

// Model checkpoints, sufficient-statistics snapshots and feature-map dumps.
// All three use the container layout documented in docs/file_formats.md:
// an 8-byte magic, a JSON header describing every array, and raw
// little-endian doubles. Saving and loading is lossless.

#ifndef RCAE_CHECKPOINT_H_
#define RCAE_CHECKPOINT_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "rcae/model.h"
#include "rcae/solver.h"
#include "rcae/stats.h"
#include "rcae/whitening.h"

namespace rcae {

struct EncoderSpec {
  std::uint64_t seed = 1;
  double sigma_a = 0.1;
  double sigma_b = 0.01;

  friend bool operator==(const EncoderSpec&, const EncoderSpec&) = default;
};

struct Checkpoint {
  ModelDims dims;
  EncoderSpec encoder;
  double lambda = 0.0;
  StatsMode mode = StatsMode::kExact;
  int cycles = 1;
  double eps_div = 1e-12;
  WhiteningModel whitening;
  DecoderFilters filters;

  // Regenerates the frozen encoder from its seed.
  EncoderParams Encoder() const;
};

void SaveCheckpoint(const Checkpoint& ckpt, const std::filesystem::path& path);
Checkpoint LoadCheckpoint(const std::filesystem::path& path);

struct StatsSnapshot {
  SufficientStats stats;
  EncoderSpec encoder;
  WhiteningModel whitening;
};

void SaveStatsSnapshot(const StatsSnapshot& snapshot, const std::filesystem::path& path);
StatsSnapshot LoadStatsSnapshot(const std::filesystem::path& path);

// K feature maps of equal dims.
void SaveFeatureMaps(const std::vector<RealPlane>& maps, const std::filesystem::path& path);
std::vector<RealPlane> LoadFeatureMaps(const std::filesystem::path& path);

}  // namespace rcae

#endif  // RCAE_CHECKPOINT_H_
