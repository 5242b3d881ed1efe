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

// Visual exports: filter tile grids and side-by-side reconstructions.

#ifndef RCAE_EXPORT_H_
#define RCAE_EXPORT_H_

#include <filesystem>
#include <vector>

#include "rcae/model.h"

namespace rcae {

struct FilterGridOptions {
  int grid_cols = 0;  // 0 picks ceil(sqrt(K))
  int grid_rows = 0;  // 0 picks ceil(K / grid_cols)
  // Crop each d x d spatial filter to its top-left `support` x `support`.
  bool crop_to_support = false;
  int support = 0;
  int gap = 1;  // black pixels between tiles
};

struct FilterGridInfo {
  int tiles = 0;
  int grid_cols = 0;
  int grid_rows = 0;
  int tile_size = 0;
};

// Lays tiles out row-major, each min-max normalized on its own. Returns
// a [0, 1] plane.
RealPlane TileGrid(const std::vector<RealPlane>& tiles, int grid_cols, int grid_rows, int gap);

// Writes the tile grid as PGM to `pgm_path` and per-filter L2 norms of the
// exported tiles to `<pgm_path>.norms.csv` (columns filter,l2_norm).
FilterGridInfo ExportFilters(const DecoderFilters& dec, const std::filesystem::path& pgm_path,
                             const FilterGridOptions& options);

// Original and reconstruction next to each other, normalized jointly.
RealPlane SideBySide(const RealPlane& left, const RealPlane& right, int gap = 2);

}  // namespace rcae

#endif  // RCAE_EXPORT_H_
