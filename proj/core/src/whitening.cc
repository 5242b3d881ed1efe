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

#include "rcae/whitening.h"

#include <cmath>

namespace rcae {
namespace {

RealPlane RemoveMean(const RealPlane& p) {
  double mean = 0.0;
  for (double v : p.values()) mean += v;
  mean /= static_cast<double>(p.size());
  RealPlane out = p;
  for (double& v : out.values()) v -= mean;
  return out;
}

RealPlane Standardize(const RealPlane& p) {
  RealPlane out = RemoveMean(p);
  double var = 0.0;
  for (double v : out.values()) var += v * v;
  var /= static_cast<double>(out.size());
  if (var > 0.0) {
    const double inv = 1.0 / std::sqrt(var);
    for (double& v : out.values()) v *= inv;
  }
  return out;
}

}  // namespace

const char* WhitenMethodName(WhitenMethod method) {
  switch (method) {
    case WhitenMethod::kSpectral: return "spectral";
    case WhitenMethod::kStandardize: return "standardize";
    case WhitenMethod::kNone: return "none";
  }
  return "unknown";
}

WhitenMethod ParseWhitenMethod(const std::string& name) {
  if (name == "spectral") return WhitenMethod::kSpectral;
  if (name == "standardize") return WhitenMethod::kStandardize;
  if (name == "none") return WhitenMethod::kNone;
  throw Error(ErrorCode::kInvalidConfig, "unknown whitening method '" + name + "'");
}

void WhitenConfig::Validate() const {
  if (method == WhitenMethod::kSpectral && !(reg > 0.0 && std::isfinite(reg))) {
    throw Error(ErrorCode::kInvalidConfig, "spectral whitening needs reg > 0");
  }
}

WhiteningModel FitWhitening(const Dataset& train, const WhitenConfig& cfg) {
  cfg.Validate();
  if (train.empty()) throw Error(ErrorCode::kEmptyDataset, "cannot fit whitening on no images");
  WhiteningModel model;
  model.config = cfg;
  model.stats_source = train.origin;
  model.fitted_on = static_cast<std::int64_t>(train.size());
  if (cfg.method != WhitenMethod::kSpectral) return model;

  const int C = train.images.front().num_channels();
  const PlaneDims dims = train.images.front().dims();
  model.mean_amplitude.assign(C, RealPlane(dims));
  for (const Image& x : train.images) {
    if (x.num_channels() != C || !(x.dims() == dims)) {
      throw Error(ErrorCode::kDimMismatch, "training images differ in shape");
    }
    for (int c = 0; c < C; ++c) {
      const ComplexPlane spectrum = Dft2(RemoveMean(x.channels[c]));
      RealPlane& acc = model.mean_amplitude[c];
      for (std::size_t i = 0; i < acc.size(); ++i) acc.values()[i] += std::abs(spectrum.values()[i]);
    }
  }
  const double inv_n = 1.0 / static_cast<double>(train.size());
  for (RealPlane& acc : model.mean_amplitude) {
    for (double& v : acc.values()) v *= inv_n;
  }
  return model;
}

Image ApplyWhitening(const Image& x, const WhiteningModel& model) {
  switch (model.config.method) {
    case WhitenMethod::kNone:
      return x;
    case WhitenMethod::kStandardize: {
      Image out;
      for (const RealPlane& p : x.channels) out.channels.push_back(Standardize(p));
      return out;
    }
    case WhitenMethod::kSpectral:
      break;
  }
  if (static_cast<int>(model.mean_amplitude.size()) != x.num_channels()) {
    throw Error(ErrorCode::kDimMismatch, "whitening model has a different channel count");
  }
  Image out;
  for (int c = 0; c < x.num_channels(); ++c) {
    const RealPlane& amplitude = model.mean_amplitude[c];
    if (!(amplitude.dims() == x.channels[c].dims())) {
      throw Error(ErrorCode::kDimMismatch, "whitening model has different image dims");
    }
    double mean_amp = 0.0;
    for (double v : amplitude.values()) mean_amp += v;
    mean_amp /= static_cast<double>(amplitude.size());
    const double floor = model.config.reg * mean_amp;
    const double gain = std::sqrt(static_cast<double>(amplitude.size()));

    ComplexPlane spectrum = Dft2(RemoveMean(x.channels[c]));
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
      const double den = amplitude.values()[i] + floor;
      spectrum.values()[i] = den > 0.0 ? spectrum.values()[i] * (gain / den) : Complex(0.0, 0.0);
    }
    out.channels.push_back(Idft2(spectrum));
  }
  return out;
}

Dataset ApplyWhitening(const Dataset& ds, const WhiteningModel& model) {
  Dataset out = ds;
  for (Image& x : out.images) x = ApplyWhitening(x, model);
  return out;
}

Dataset Whiten(const Dataset& ds, const WhitenConfig& cfg) {
  if (ds.empty()) throw Error(ErrorCode::kEmptyDataset, "cannot whiten an empty dataset");
  return ApplyWhitening(ds, FitWhitening(ds, cfg));
}

}  // namespace rcae
