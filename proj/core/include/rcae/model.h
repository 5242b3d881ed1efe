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

// Single-layer convolutional auto-encoder: frozen random encoder, linear
// spectral decoder, and the forward passes that connect them.

#ifndef RCAE_MODEL_H_
#define RCAE_MODEL_H_

#include <cstdint>
#include <string>
#include <vector>

#include "rcae/spectral.h"

namespace rcae {

struct ModelDims {
  int image_size = 64;   // d
  int filter_size = 8;   // w
  int channels = 1;      // C
  int filters = 32;      // K

  // Side of the encoding maps, d - w + 1.
  int map_size() const { return image_size - filter_size + 1; }
  PlaneDims image_dims() const { return {image_size, image_size}; }
  PlaneDims filter_dims() const { return {filter_size, filter_size}; }
  PlaneDims map_dims() const { return {map_size(), map_size()}; }

  // Throws kInvalidDims unless d, w, C, K >= 1 and d - w + 1 >= 1.
  void Validate() const;

  friend bool operator==(const ModelDims&, const ModelDims&) = default;
};

// C-channel image; every channel has the same dims.
struct Image {
  std::vector<RealPlane> channels;

  int num_channels() const { return static_cast<int>(channels.size()); }
  PlaneDims dims() const { return channels.empty() ? PlaneDims{} : channels.front().dims(); }
  friend bool operator==(const Image&, const Image&) = default;
};

// Sum of the channels, the reconstruction target.
RealPlane ChannelSum(const Image& x);

// Entrywise activation g and its derivative. `derivative` receives both the
// pre-activation v and g(v) so tanh can use 1 - g^2.
struct Activation {
  std::string name;
  double (*value)(double v);
  double (*derivative)(double v, double g);

  static const Activation& Tanh();
};

struct EncoderParams {
  ModelDims dims;
  std::vector<RealPlane> filters;  // K planes, w x w
  std::vector<RealPlane> biases;   // K planes, h x h
  std::uint64_t seed = 0;
  double sigma_a = 0.1;
  double sigma_b = 0.01;

  friend bool operator==(const EncoderParams&, const EncoderParams&) = default;
};

// Draws every filter entry from N(0, sigma_a^2), then every bias entry from
// N(0, sigma_b^2), from one std::mt19937_64 stream seeded with `seed`.
EncoderParams InitEncoder(const ModelDims& dims, std::uint64_t seed, double sigma_a = 0.1,
                          double sigma_b = 0.01);

// Dft2 of each encoding filter zero-padded to d x d.
std::vector<ComplexPlane> FilterSpectra(const EncoderParams& enc);

struct EncodingResult {
  std::vector<RealPlane> preactivation;  // v^(k)
  std::vector<RealPlane> maps;           // g(v^(k))
  std::vector<RealPlane> derivmaps;      // g'(v^(k))
};

EncodingResult Encode(const Image& x, const EncoderParams& enc,
                      const Activation& act = Activation::Tanh());

// Decoding filters held in the frequency domain. Spatial filters are
// derived on demand and keep the full d x d support.
class DecoderFilters {
 public:
  DecoderFilters() = default;
  explicit DecoderFilters(std::vector<ComplexPlane> spectral);

  static DecoderFilters Zeros(const ModelDims& dims);
  static DecoderFilters FromSpatial(const std::vector<RealPlane>& spatial, PlaneDims grid);

  int num_filters() const { return static_cast<int>(spectral_.size()); }
  PlaneDims grid() const { return spectral_.empty() ? PlaneDims{} : spectral_.front().dims(); }
  const std::vector<ComplexPlane>& spectral() const { return spectral_; }
  const ComplexPlane& spectral(int k) const { return spectral_.at(static_cast<std::size_t>(k)); }

  RealPlane Spatial(int k) const;
  std::vector<RealPlane> AllSpatial() const;

  friend bool operator==(const DecoderFilters&, const DecoderFilters&) = default;

 private:
  std::vector<ComplexPlane> spectral_;
};

// idft2(sum_k W^(k) . dft2(pad(h^(k), d))). Output d x d.
RealPlane Reconstruct(const Image& x, const EncoderParams& enc, const DecoderFilters& dec,
                      const Activation& act = Activation::Tanh());
RealPlane ReconstructFromMaps(const std::vector<RealPlane>& maps, const DecoderFilters& dec);

enum class FilterOrientation { kTranspose, kRotate180 };

struct InferenceOptions {
  FilterOrientation orientation = FilterOrientation::kTranspose;
  // When set, the learned d x d filter is cropped to its top-left w x w
  // support before use, giving h x h feature maps. Otherwise the full
  // filter is used and each map is 1 x 1.
  bool crop_to_support = true;
};

// Feature maps g(sum_c conv_valid(x^(c), orient(w^(k)))), one per filter.
std::vector<RealPlane> InferFeatures(const Image& x, const DecoderFilters& dec,
                                     const ModelDims& dims, const InferenceOptions& options = {},
                                     const Activation& act = Activation::Tanh());

}  // namespace rcae

#endif  // RCAE_MODEL_H_
