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

// Netpbm (PGM/PPM) reading and writing.

#ifndef RCAE_IMAGE_IO_H_
#define RCAE_IMAGE_IO_H_

#include <filesystem>

#include "rcae/model.h"
#include "rcae/spectral.h"

namespace rcae {

// Decodes P2/P3/P5/P6. Returns one plane per channel (1 for PGM, 3 for PPM)
// with samples scaled to [0, 1] by maxval. Throws kUnreadablePath or
// kDecodeFailure.
Image ReadPnm(const std::filesystem::path& path);

// Writes an 8-bit binary PGM. Values are clamped to [0, 1] and mapped to
// round(255 * v).
void WritePgm(const std::filesystem::path& path, const RealPlane& unit_values);

// Min-max normalization to [0, 1]; a constant plane maps to 0.5 everywhere.
RealPlane NormalizeMinMax(const RealPlane& p);

}  // namespace rcae

#endif  // RCAE_IMAGE_IO_H_
