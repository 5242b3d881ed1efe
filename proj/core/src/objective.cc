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

#include "rcae/objective.h"

namespace rcae {
namespace {

struct SampleTerms {
  double recon = 0.0;
  double contractive = 0.0;
};

SampleTerms EvaluateSample(const SpectralSample& s, const DecoderFilters& dec) {
  const int K = dec.num_filters();
  if (static_cast<int>(s.H.size()) != K || static_cast<int>(s.D.size()) != K ||
      !(s.X.dims() == dec.grid())) {
    throw Error(ErrorCode::kDimMismatch, "sample does not match decoder filters");
  }
  SampleTerms t;
  const std::size_t bins = s.X.size();
  for (std::size_t b = 0; b < bins; ++b) {
    Complex residual = -s.X.values()[b];
    Complex contraction(0.0, 0.0);
    for (int k = 0; k < K; ++k) {
      const Complex w = dec.spectral(k).values()[b];
      residual += w * s.H[k].values()[b];
      contraction += w * s.D[k].values()[b];
    }
    t.recon += std::norm(residual);
    t.contractive += std::norm(contraction);
  }
  const double scale = 1.0 / static_cast<double>(bins);
  t.recon *= scale;
  t.contractive *= scale;
  return t;
}

LossBreakdown Finish(double recon_sum, double contractive_sum, std::int64_t n, double lambda) {
  LossBreakdown out;
  out.n = n;
  out.lambda = lambda;
  out.recon = recon_sum / static_cast<double>(n);
  out.contractive = contractive_sum / static_cast<double>(n);
  out.total = out.recon + lambda * out.contractive;
  return out;
}

}  // namespace

LossBreakdown LossSpectral(std::span<const SpectralSample> batch, const DecoderFilters& dec,
                           double lambda) {
  if (batch.empty()) throw Error(ErrorCode::kEmptyBatch, "loss over an empty batch");
  double recon = 0.0;
  double contractive = 0.0;
  for (const SpectralSample& s : batch) {
    const SampleTerms t = EvaluateSample(s, dec);
    recon += t.recon;
    contractive += t.contractive;
  }
  return Finish(recon, contractive, static_cast<std::int64_t>(batch.size()), lambda);
}

LossBreakdown LossSpectral(std::span<const std::shared_ptr<const SpectralSample>> batch,
                           const DecoderFilters& dec, double lambda) {
  if (batch.empty()) throw Error(ErrorCode::kEmptyBatch, "loss over an empty batch");
  double recon = 0.0;
  double contractive = 0.0;
  for (const auto& s : batch) {
    const SampleTerms t = EvaluateSample(*s, dec);
    recon += t.recon;
    contractive += t.contractive;
  }
  return Finish(recon, contractive, static_cast<std::int64_t>(batch.size()), lambda);
}

LossBreakdown LossSpectral(const SufficientStats& stats, const DecoderFilters& dec,
                           double lambda) {
  if (stats.mode != StatsMode::kExact) {
    throw Error(ErrorCode::kModeMismatch, "spectral loss needs per-sample spectra");
  }
  return LossSpectral(std::span<const std::shared_ptr<const SpectralSample>>(stats.samples), dec,
                      lambda);
}

LossBreakdown LossSpatial(std::span<const Image> batch, const EncoderParams& enc,
                          const DecoderFilters& dec, double lambda, const Activation& act) {
  if (batch.empty()) throw Error(ErrorCode::kEmptyBatch, "loss over an empty batch");
  const std::vector<ComplexPlane> filter_spectra = FilterSpectra(enc);
  const PlaneDims grid = enc.dims.image_dims();
  double recon = 0.0;
  double contractive = 0.0;
  for (const Image& x : batch) {
    const EncodingResult code = Encode(x, enc, act);
    const RealPlane r = ReconstructFromMaps(code.maps, dec);
    const RealPlane target = ChannelSum(x);
    double err = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      const double e = r.values()[i] - target.values()[i];
      err += e * e;
    }
    recon += err;

    ComplexPlane penalty(grid);
    for (int k = 0; k < enc.dims.filters; ++k) {
      const ComplexPlane Dk = Hadamard(Dft2(PadTo(code.derivmaps[k], grid)), filter_spectra[k]);
      const ComplexPlane& W = dec.spectral(k);
      for (std::size_t b = 0; b < penalty.size(); ++b) {
        penalty.values()[b] += W.values()[b] * Dk.values()[b];
      }
    }
    contractive += SquaredNorm(Idft2(penalty));
  }
  return Finish(recon, contractive, static_cast<std::int64_t>(batch.size()), lambda);
}

double ReconstructionError(std::span<const Image> batch, const EncoderParams& enc,
                           const DecoderFilters& dec, const Activation& act) {
  if (batch.empty()) throw Error(ErrorCode::kEmptyBatch, "reconstruction error over an empty batch");
  double total = 0.0;
  for (const Image& x : batch) {
    const RealPlane r = Reconstruct(x, enc, dec, act);
    const RealPlane target = ChannelSum(x);
    double err = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      const double e = r.values()[i] - target.values()[i];
      err += e * e;
    }
    total += err;
  }
  return total / static_cast<double>(batch.size());
}

}  // namespace rcae
