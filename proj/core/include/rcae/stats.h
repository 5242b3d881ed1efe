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

// Frequency-domain sufficient statistics. Ingestion (lifting images to
// spectra and summing them) is fully separated from the solve.

#ifndef RCAE_STATS_H_
#define RCAE_STATS_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "rcae/model.h"
#include "rcae/spectral.h"

namespace rcae {

// kLiteral keeps only the summed planes; kExact additionally retains every
// per-image sample so cross terms can be formed per sample.
enum class StatsMode { kLiteral, kExact };

const char* StatsModeName(StatsMode mode);
StatsMode ParseStatsMode(const std::string& name);

// Spectra of one training image.
struct SpectralSample {
  std::vector<ComplexPlane> H;  // dft2(pad(h^(k)))
  ComplexPlane X;               // sum_c dft2(x^(c))
  std::vector<ComplexPlane> D;  // dft2(pad(g'(v^(k)))) . dft2(pad(a^(k)))

  friend bool operator==(const SpectralSample&, const SpectralSample&) = default;
};

struct SufficientStats {
  ModelDims dims;
  StatsMode mode = StatsMode::kExact;
  std::int64_t n_seen = 0;
  std::vector<ComplexPlane> H_sum;  // K planes
  ComplexPlane X_sum;
  std::vector<ComplexPlane> D_sum;  // K planes
  // Exact mode only; shared so copies of the stats stay cheap.
  std::vector<std::shared_ptr<const SpectralSample>> samples;

  static SufficientStats Empty(const ModelDims& dims, StatsMode mode);
};

SpectralSample LiftSample(const Image& x, const EncoderParams& enc,
                          const Activation& act = Activation::Tanh());
// Same, reusing precomputed FilterSpectra(enc).
SpectralSample LiftSample(const Image& x, const EncoderParams& enc,
                          const std::vector<ComplexPlane>& filter_spectra,
                          const Activation& act = Activation::Tanh());

SufficientStats Absorb(SufficientStats stats, SpectralSample sample);
SufficientStats Absorb(SufficientStats stats, std::shared_ptr<const SpectralSample> sample);

// Entrywise sums of a and b; b's samples are appended after a's.
SufficientStats Merge(SufficientStats a, const SufficientStats& b);

}  // namespace rcae

#endif  // RCAE_STATS_H_
