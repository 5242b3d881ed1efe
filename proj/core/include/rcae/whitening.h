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

// Image whitening. Statistics are fitted on a training split and then
// applied unchanged to any other split.

#ifndef RCAE_WHITENING_H_
#define RCAE_WHITENING_H_

#include <string>
#include <vector>

#include "rcae/dataset.h"

namespace rcae {

enum class WhitenMethod { kSpectral, kStandardize, kNone };

const char* WhitenMethodName(WhitenMethod method);
WhitenMethod ParseWhitenMethod(const std::string& name);

struct WhitenConfig {
  WhitenMethod method = WhitenMethod::kSpectral;
  // Spectral mode divides by (A + reg * mean(A)), where A is the mean
  // training amplitude spectrum of a channel.
  double reg = 0.01;

  void Validate() const;
};

struct WhiteningModel {
  WhitenConfig config;
  std::vector<RealPlane> mean_amplitude;  // per channel, spectral mode only
  std::string stats_source;               // origin of the fitting split
  std::int64_t fitted_on = 0;
};

WhiteningModel FitWhitening(const Dataset& train, const WhitenConfig& cfg);

// Spectral: per-channel mean removal, spectrum divided by the regularized
// mean amplitude, scaled by d so pixels have roughly unit variance.
// Standardize: per-image, per-channel zero mean and unit variance.
Image ApplyWhitening(const Image& x, const WhiteningModel& model);
Dataset ApplyWhitening(const Dataset& ds, const WhiteningModel& model);

// Fits on `ds` and applies to it.
Dataset Whiten(const Dataset& ds, const WhitenConfig& cfg);

}  // namespace rcae

#endif  // RCAE_WHITENING_H_
