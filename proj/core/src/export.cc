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

#include "rcae/export.h"

#include <algorithm>
#include <cmath>

#include "rcae/image_io.h"
#include "rcae/metrics.h"

namespace rcae {

RealPlane TileGrid(const std::vector<RealPlane>& tiles, int grid_cols, int grid_rows, int gap) {
  if (tiles.empty()) throw Error(ErrorCode::kInvalidSpec, "no tiles to lay out");
  if (grid_cols < 1 || grid_rows < 1 ||
      static_cast<std::size_t>(grid_cols) * grid_rows < tiles.size()) {
    throw Error(ErrorCode::kInvalidSpec, "grid " + std::to_string(grid_cols) + "x" +
                                             std::to_string(grid_rows) + " cannot hold " +
                                             std::to_string(tiles.size()) + " tiles");
  }
  const int th = tiles.front().rows();
  const int tw = tiles.front().cols();
  RealPlane out(grid_rows * th + (grid_rows - 1) * gap, grid_cols * tw + (grid_cols - 1) * gap);
  for (std::size_t t = 0; t < tiles.size(); ++t) {
    if (!(tiles[t].dims() == tiles.front().dims())) {
      throw Error(ErrorCode::kDimMismatch, "tiles differ in size");
    }
    const RealPlane norm = NormalizeMinMax(tiles[t]);
    const int gr = static_cast<int>(t) / grid_cols;
    const int gc = static_cast<int>(t) % grid_cols;
    for (int r = 0; r < th; ++r) {
      for (int c = 0; c < tw; ++c) out(gr * (th + gap) + r, gc * (tw + gap) + c) = norm(r, c);
    }
  }
  return out;
}

FilterGridInfo ExportFilters(const DecoderFilters& dec, const std::filesystem::path& pgm_path,
                             const FilterGridOptions& options) {
  const int K = dec.num_filters();
  if (K < 1) throw Error(ErrorCode::kInvalidSpec, "no filters to export");
  std::vector<RealPlane> tiles = dec.AllSpatial();
  if (options.crop_to_support) {
    if (options.support < 1 || options.support > dec.grid().rows) {
      throw Error(ErrorCode::kInvalidSpec, "crop support must be in [1, d]");
    }
    for (RealPlane& t : tiles) t = CropTo(t, {options.support, options.support});
  }
  FilterGridInfo info;
  info.tiles = K;
  info.grid_cols = options.grid_cols > 0
                       ? options.grid_cols
                       : static_cast<int>(std::ceil(std::sqrt(static_cast<double>(K))));
  info.grid_rows = options.grid_rows > 0 ? options.grid_rows : (K + info.grid_cols - 1) / info.grid_cols;
  info.tile_size = tiles.front().rows();
  WritePgm(pgm_path, TileGrid(tiles, info.grid_cols, info.grid_rows, std::max(options.gap, 0)));

  MetricTable norms({"filter", "l2_norm"});
  for (int k = 0; k < K; ++k) {
    norms.AddRow({static_cast<std::int64_t>(k), std::sqrt(SquaredNorm(tiles[k]))});
  }
  ExportMetrics(norms, pgm_path.string() + ".norms.csv");
  return info;
}

RealPlane SideBySide(const RealPlane& left, const RealPlane& right, int gap) {
  if (!(left.dims() == right.dims())) throw Error(ErrorCode::kDimMismatch, "panels differ in size");
  double lo = 0.0, hi = 0.0;
  if (!left.empty()) {
    const auto [l0, l1] = std::minmax_element(left.values().begin(), left.values().end());
    const auto [r0, r1] = std::minmax_element(right.values().begin(), right.values().end());
    lo = std::min(*l0, *r0);
    hi = std::max(*l1, *r1);
  }
  const double range = hi - lo;
  RealPlane out(left.rows(), 2 * left.cols() + gap);
  for (int r = 0; r < left.rows(); ++r) {
    for (int c = 0; c < left.cols(); ++c) {
      out(r, c) = range > 0.0 ? (left(r, c) - lo) / range : 0.5;
      out(r, c + left.cols() + gap) = range > 0.0 ? (right(r, c) - lo) / range : 0.5;
    }
  }
  return out;
}

}  // namespace rcae
