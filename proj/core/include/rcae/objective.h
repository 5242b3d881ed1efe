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

// RCAE loss, evaluated either from per-sample spectra or from images.
// Both routes report per-image means and agree up to rounding because the
// spectral sums are scaled by 1/d^2 (Parseval under the Dft2 convention).

#ifndef RCAE_OBJECTIVE_H_
#define RCAE_OBJECTIVE_H_

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "rcae/model.h"
#include "rcae/stats.h"

namespace rcae {

struct LossBreakdown {
  double recon = 0.0;        // mean ||r(x_n) - target_n||^2
  double contractive = 0.0;  // mean ||sum_k W^(k) . D_n^(k)||^2 / d^2
  double total = 0.0;        // recon + lambda * contractive
  std::int64_t n = 0;
  double lambda = 0.0;
};

LossBreakdown LossSpectral(std::span<const SpectralSample> batch, const DecoderFilters& dec,
                           double lambda);
LossBreakdown LossSpectral(std::span<const std::shared_ptr<const SpectralSample>> batch,
                           const DecoderFilters& dec, double lambda);
// Needs exact-mode stats (kModeMismatch otherwise).
LossBreakdown LossSpectral(const SufficientStats& stats, const DecoderFilters& dec,
                           double lambda);

// Reconstruction term from the spatial reconstruction against the channel
// sum; penalty term as ||idft2(sum_k W^(k) . D_n^(k))||^2.
LossBreakdown LossSpatial(std::span<const Image> batch, const EncoderParams& enc,
                          const DecoderFilters& dec, double lambda,
                          const Activation& act = Activation::Tanh());

// Mean per-image ||r(x) - target||^2 with no penalty term.
double ReconstructionError(std::span<const Image> batch, const EncoderParams& enc,
                           const DecoderFilters& dec, const Activation& act = Activation::Tanh());

}  // namespace rcae

#endif  // RCAE_OBJECTIVE_H_
