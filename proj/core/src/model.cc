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

#include "rcae/model.h"

#include <cmath>
#include <random>
#include <string>

namespace rcae {
namespace {

double TanhValue(double v) { return std::tanh(v); }
double TanhDerivative(double /*v*/, double g) { return 1.0 - g * g; }

void CheckImage(const Image& x, const ModelDims& dims) {
  if (x.num_channels() != dims.channels) {
    throw Error(ErrorCode::kDimMismatch, "image has " + std::to_string(x.num_channels()) +
                                             " channels, model expects " +
                                             std::to_string(dims.channels));
  }
  for (const RealPlane& ch : x.channels) {
    if (!(ch.dims() == dims.image_dims())) {
      throw Error(ErrorCode::kDimMismatch, "image is " + std::to_string(ch.rows()) + "x" +
                                               std::to_string(ch.cols()) + ", model expects " +
                                               std::to_string(dims.image_size) + "x" +
                                               std::to_string(dims.image_size));
    }
  }
}

}  // namespace

void ModelDims::Validate() const {
  if (image_size < 1 || filter_size < 1 || channels < 1 || filters < 1) {
    throw Error(ErrorCode::kInvalidDims, "d, w, C and K must all be >= 1");
  }
  if (map_size() < 1) throw Error(ErrorCode::kInvalidDims, "filter larger than image");
}

RealPlane ChannelSum(const Image& x) {
  if (x.channels.empty()) throw Error(ErrorCode::kDimMismatch, "image has no channels");
  RealPlane out = x.channels.front();
  for (std::size_t c = 1; c < x.channels.size(); ++c) {
    if (!(x.channels[c].dims() == out.dims())) {
      throw Error(ErrorCode::kDimMismatch, "channel dims differ");
    }
    for (std::size_t i = 0; i < out.size(); ++i) out.values()[i] += x.channels[c].values()[i];
  }
  return out;
}

const Activation& Activation::Tanh() {
  static const Activation kTanh{"tanh", &TanhValue, &TanhDerivative};
  return kTanh;
}

EncoderParams InitEncoder(const ModelDims& dims, std::uint64_t seed, double sigma_a,
                          double sigma_b) {
  dims.Validate();
  if (!(sigma_a > 0.0) || !(sigma_b > 0.0) || !std::isfinite(sigma_a) ||
      !std::isfinite(sigma_b)) {
    throw Error(ErrorCode::kInvalidSigma, "encoder standard deviations must be positive");
  }
  EncoderParams enc;
  enc.dims = dims;
  enc.seed = seed;
  enc.sigma_a = sigma_a;
  enc.sigma_b = sigma_b;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> filter_dist(0.0, sigma_a);
  std::normal_distribution<double> bias_dist(0.0, sigma_b);
  enc.filters.reserve(dims.filters);
  for (int k = 0; k < dims.filters; ++k) {
    RealPlane a(dims.filter_dims());
    for (double& v : a.values()) v = filter_dist(rng);
    enc.filters.push_back(std::move(a));
  }
  enc.biases.reserve(dims.filters);
  for (int k = 0; k < dims.filters; ++k) {
    RealPlane b(dims.map_dims());
    for (double& v : b.values()) v = bias_dist(rng);
    enc.biases.push_back(std::move(b));
  }
  return enc;
}

std::vector<ComplexPlane> FilterSpectra(const EncoderParams& enc) {
  std::vector<ComplexPlane> out;
  out.reserve(enc.filters.size());
  for (const RealPlane& a : enc.filters) out.push_back(Dft2(PadTo(a, enc.dims.image_dims())));
  return out;
}

EncodingResult Encode(const Image& x, const EncoderParams& enc, const Activation& act) {
  CheckImage(x, enc.dims);
  const int K = enc.dims.filters;
  EncodingResult result;
  result.preactivation.reserve(K);
  result.maps.reserve(K);
  result.derivmaps.reserve(K);
  for (int k = 0; k < K; ++k) {
    RealPlane v = enc.biases[k];
    for (const RealPlane& channel : x.channels) {
      const RealPlane conv = ConvValid(channel, enc.filters[k]);
      for (std::size_t i = 0; i < v.size(); ++i) v.values()[i] += conv.values()[i];
    }
    RealPlane h(v.dims());
    RealPlane dh(v.dims());
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double g = act.value(v.values()[i]);
      h.values()[i] = g;
      dh.values()[i] = act.derivative(v.values()[i], g);
    }
    result.preactivation.push_back(std::move(v));
    result.maps.push_back(std::move(h));
    result.derivmaps.push_back(std::move(dh));
  }
  return result;
}

DecoderFilters::DecoderFilters(std::vector<ComplexPlane> spectral)
    : spectral_(std::move(spectral)) {
  for (const ComplexPlane& p : spectral_) {
    if (!(p.dims() == spectral_.front().dims())) {
      throw Error(ErrorCode::kDimMismatch, "decoder filters differ in dims");
    }
  }
}

DecoderFilters DecoderFilters::Zeros(const ModelDims& dims) {
  dims.Validate();
  return DecoderFilters(
      std::vector<ComplexPlane>(dims.filters, ComplexPlane(dims.image_dims())));
}

DecoderFilters DecoderFilters::FromSpatial(const std::vector<RealPlane>& spatial,
                                           PlaneDims grid) {
  std::vector<ComplexPlane> spectral;
  spectral.reserve(spatial.size());
  for (const RealPlane& w : spatial) spectral.push_back(Dft2(PadTo(w, grid)));
  return DecoderFilters(std::move(spectral));
}

RealPlane DecoderFilters::Spatial(int k) const { return Idft2(spectral(k)); }

std::vector<RealPlane> DecoderFilters::AllSpatial() const {
  std::vector<RealPlane> out;
  out.reserve(spectral_.size());
  for (const ComplexPlane& p : spectral_) out.push_back(Idft2(p));
  return out;
}

RealPlane ReconstructFromMaps(const std::vector<RealPlane>& maps, const DecoderFilters& dec) {
  if (static_cast<int>(maps.size()) != dec.num_filters()) {
    throw Error(ErrorCode::kDimMismatch, "map count differs from decoder filter count");
  }
  const PlaneDims grid = dec.grid();
  ComplexPlane sum(grid);
  for (std::size_t k = 0; k < maps.size(); ++k) {
    const ComplexPlane H = Dft2(PadTo(maps[k], grid));
    const ComplexPlane& W = dec.spectral(static_cast<int>(k));
    for (std::size_t i = 0; i < sum.size(); ++i) sum.values()[i] += W.values()[i] * H.values()[i];
  }
  return Idft2(sum);
}

RealPlane Reconstruct(const Image& x, const EncoderParams& enc, const DecoderFilters& dec,
                      const Activation& act) {
  if (dec.num_filters() != enc.dims.filters || !(dec.grid() == enc.dims.image_dims())) {
    throw Error(ErrorCode::kDimMismatch, "decoder does not match encoder dims");
  }
  return ReconstructFromMaps(Encode(x, enc, act).maps, dec);
}

std::vector<RealPlane> InferFeatures(const Image& x, const DecoderFilters& dec,
                                     const ModelDims& dims, const InferenceOptions& options,
                                     const Activation& act) {
  CheckImage(x, dims);
  if (dec.num_filters() != dims.filters || !(dec.grid() == dims.image_dims())) {
    throw Error(ErrorCode::kDimMismatch, "decoder does not match model dims");
  }
  std::vector<RealPlane> features;
  features.reserve(dims.filters);
  for (int k = 0; k < dims.filters; ++k) {
    RealPlane w = dec.Spatial(k);
    if (options.crop_to_support) w = CropTo(w, dims.filter_dims());
    const RealPlane kernel = options.orientation == FilterOrientation::kTranspose
                                 ? Transpose(w)
                                 : Rotate180(w);
    RealPlane acc;
    for (const RealPlane& channel : x.channels) {
      RealPlane conv = ConvValid(channel, kernel);
      if (acc.empty()) {
        acc = std::move(conv);
      } else {
        for (std::size_t i = 0; i < acc.size(); ++i) acc.values()[i] += conv.values()[i];
      }
    }
    for (double& v : acc.values()) v = act.value(v);
    features.push_back(std::move(acc));
  }
  return features;
}

}  // namespace rcae
