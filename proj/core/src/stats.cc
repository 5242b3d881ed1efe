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

#include <string>

namespace rcae {
namespace {

void AddInto(ComplexPlane& acc, const ComplexPlane& p) {
  if (!(acc.dims() == p.dims())) throw Error(ErrorCode::kDimMismatch, "spectral plane dims differ");
  for (std::size_t i = 0; i < acc.size(); ++i) acc.values()[i] += p.values()[i];
}

void CheckSample(const SufficientStats& stats, const SpectralSample& s) {
  const auto K = static_cast<std::size_t>(stats.dims.filters);
  if (s.H.size() != K || s.D.size() != K || !(s.X.dims() == stats.dims.image_dims())) {
    throw Error(ErrorCode::kDimMismatch, "sample does not match stats dims");
  }
}

}  // namespace

const char* StatsModeName(StatsMode mode) {
  return mode == StatsMode::kLiteral ? "literal" : "exact";
}

StatsMode ParseStatsMode(const std::string& name) {
  if (name == "literal") return StatsMode::kLiteral;
  if (name == "exact") return StatsMode::kExact;
  throw Error(ErrorCode::kInvalidConfig, "unknown solver mode '" + name + "'");
}

SufficientStats SufficientStats::Empty(const ModelDims& dims, StatsMode mode) {
  dims.Validate();
  SufficientStats s;
  s.dims = dims;
  s.mode = mode;
  s.H_sum.assign(dims.filters, ComplexPlane(dims.image_dims()));
  s.X_sum = ComplexPlane(dims.image_dims());
  s.D_sum.assign(dims.filters, ComplexPlane(dims.image_dims()));
  return s;
}

SpectralSample LiftSample(const Image& x, const EncoderParams& enc, const Activation& act) {
  return LiftSample(x, enc, FilterSpectra(enc), act);
}

SpectralSample LiftSample(const Image& x, const EncoderParams& enc,
                          const std::vector<ComplexPlane>& filter_spectra,
                          const Activation& act) {
  if (filter_spectra.size() != enc.filters.size()) {
    throw Error(ErrorCode::kDimMismatch, "filter spectra do not match encoder");
  }
  const EncodingResult code = Encode(x, enc, act);
  const PlaneDims grid = enc.dims.image_dims();
  SpectralSample s;
  s.H.reserve(code.maps.size());
  s.D.reserve(code.maps.size());
  for (std::size_t k = 0; k < code.maps.size(); ++k) {
    s.H.push_back(Dft2(PadTo(code.maps[k], grid)));
    s.D.push_back(Hadamard(Dft2(PadTo(code.derivmaps[k], grid)), filter_spectra[k]));
  }
  s.X = ComplexPlane(grid);
  for (const RealPlane& channel : x.channels) AddInto(s.X, Dft2(channel));
  return s;
}

SufficientStats Absorb(SufficientStats stats, SpectralSample sample) {
  return Absorb(std::move(stats), std::make_shared<const SpectralSample>(std::move(sample)));
}

SufficientStats Absorb(SufficientStats stats, std::shared_ptr<const SpectralSample> sample) {
  CheckSample(stats, *sample);
  for (int k = 0; k < stats.dims.filters; ++k) {
    AddInto(stats.H_sum[k], sample->H[k]);
    AddInto(stats.D_sum[k], sample->D[k]);
  }
  AddInto(stats.X_sum, sample->X);
  ++stats.n_seen;
  if (stats.mode == StatsMode::kExact) stats.samples.push_back(std::move(sample));
  return stats;
}

SufficientStats Merge(SufficientStats a, const SufficientStats& b) {
  if (a.mode != b.mode) throw Error(ErrorCode::kModeMismatch, "cannot merge literal and exact stats");
  if (!(a.dims == b.dims)) throw Error(ErrorCode::kDimMismatch, "cannot merge stats of different dims");
  for (int k = 0; k < a.dims.filters; ++k) {
    AddInto(a.H_sum[k], b.H_sum[k]);
    AddInto(a.D_sum[k], b.D_sum[k]);
  }
  AddInto(a.X_sum, b.X_sum);
  a.n_seen += b.n_seen;
  a.samples.insert(a.samples.end(), b.samples.begin(), b.samples.end());
  return a;
}

}  // namespace rcae
