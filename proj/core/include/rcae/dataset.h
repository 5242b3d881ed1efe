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

// Image datasets: directory loading with crop/resize, and seeded synthetic
// generators.

#ifndef RCAE_DATASET_H_
#define RCAE_DATASET_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "rcae/model.h"

namespace rcae {

struct Dataset {
  std::vector<Image> images;
  std::vector<std::string> sources;  // one id per image (file name or synthetic id)
  std::string origin;                // directory path or synthetic spec string
  int image_size = 0;
  int channels = 0;

  std::size_t size() const { return images.size(); }
  bool empty() const { return images.empty(); }
  // Images [begin, end) as a new dataset.
  Dataset Slice(std::size_t begin, std::size_t end) const;
};

// Converts a decoded image to `channels` (luminance collapse for 1, channel
// replication for a gray source), center-crops the largest square and
// area-resamples it to d x d. Throws kDimUnderflow when the crop is smaller
// than d.
Image PrepareImage(const Image& raw, int d, int channels);

// Loads *.pgm / *.ppm / *.pnm from `dir` in lexicographic filename order.
// Undecodable files are skipped with a warning on `warnings`; at most
// `limit` images are kept (0 keeps all).
Dataset LoadDataset(const std::filesystem::path& dir, int d, int channels, std::size_t limit = 0,
                    std::ostream* warnings = nullptr);

Image LoadImage(const std::filesystem::path& path, int d, int channels);

enum class SynthKind { kGaussianBlobs, kGaborTextures, kBandlimitedNoise };

const char* SynthKindName(SynthKind kind);
SynthKind ParseSynthKind(const std::string& name);

struct SynthSpec {
  SynthKind kind = SynthKind::kBandlimitedNoise;
  int n = 1;
  int image_size = 64;
  int channels = 1;
  std::uint64_t seed = 1;
  // Bandlimited noise keeps bins with radial frequency <= band * (d / 2).
  double band = 0.5;
  // Index of the first generated image; image i depends only on
  // (kind, seed, first_index + i), so streams can be extended.
  int first_index = 0;
};

Dataset SynthDataset(const SynthSpec& spec);

// Synthetic data locators of the form
//   synth:<kind>[,n=<count>][,seed=<s>][,band=<b>][,first=<i>]
// Image size and channels come from the caller.
bool IsSynthLocator(const std::string& locator);
SynthSpec ParseSynthLocator(const std::string& locator, int image_size, int channels);
std::string FormatSynthLocator(const SynthSpec& spec);

// Throws kOverlappingSplits if the two datasets share a source id.
void RequireDisjoint(const Dataset& a, const Dataset& b);

}  // namespace rcae

#endif  // RCAE_DATASET_H_
