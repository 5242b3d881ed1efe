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

#include "rcae/image_io.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

namespace rcae {
namespace {

class PnmParser {
 public:
  PnmParser(std::vector<unsigned char> bytes, std::string name)
      : bytes_(std::move(bytes)), name_(std::move(name)) {}

  Image Parse() {
    if (bytes_.size() < 2 || bytes_[0] != 'P') Fail("missing netpbm magic");
    const char kind = static_cast<char>(bytes_[1]);
    pos_ = 2;
    int channels = 0;
    bool ascii = false;
    switch (kind) {
      case '2': channels = 1; ascii = true; break;
      case '3': channels = 3; ascii = true; break;
      case '5': channels = 1; break;
      case '6': channels = 3; break;
      default: Fail(std::string("unsupported netpbm type P") + kind);
    }
    const long width = ReadHeaderInt();
    const long height = ReadHeaderInt();
    const long maxval = ReadHeaderInt();
    if (width < 1 || height < 1 || width > 65536 || height > 65536) Fail("bad dimensions");
    if (maxval < 1 || maxval > 65535) Fail("bad maxval");

    Image img;
    img.channels.assign(channels, RealPlane(static_cast<int>(height), static_cast<int>(width)));
    const double scale = 1.0 / static_cast<double>(maxval);
    if (ascii) {
      for (long r = 0; r < height; ++r) {
        for (long c = 0; c < width; ++c) {
          for (int ch = 0; ch < channels; ++ch) {
            const long v = ReadHeaderInt();
            if (v > maxval) Fail("sample exceeds maxval");
            img.channels[ch](static_cast<int>(r), static_cast<int>(c)) = v * scale;
          }
        }
      }
      return img;
    }
    // Exactly one whitespace byte separates the header from raster data.
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) Fail("malformed header");
    ++pos_;
    const int bytes_per_sample = maxval < 256 ? 1 : 2;
    const std::size_t needed = static_cast<std::size_t>(width) * height * channels * bytes_per_sample;
    if (bytes_.size() - pos_ < needed) Fail("truncated raster");
    for (long r = 0; r < height; ++r) {
      for (long c = 0; c < width; ++c) {
        for (int ch = 0; ch < channels; ++ch) {
          long v = bytes_[pos_++];
          if (bytes_per_sample == 2) v = (v << 8) | bytes_[pos_++];
          if (v > maxval) Fail("sample exceeds maxval");
          img.channels[ch](static_cast<int>(r), static_cast<int>(c)) = v * scale;
        }
      }
    }
    return img;
  }

 private:
  [[noreturn]] void Fail(const std::string& what) const {
    throw Error(ErrorCode::kDecodeFailure, name_ + ": " + what);
  }

  void SkipSpaceAndComments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  long ReadHeaderInt() {
    SkipSpaceAndComments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) Fail("expected integer");
    long v = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_++] - '0');
      if (v > 100000000) Fail("integer out of range");
    }
    return v;
  }

  std::vector<unsigned char> bytes_;
  std::string name_;
  std::size_t pos_ = 0;
};

}  // namespace

Image ReadPnm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kUnreadablePath, "cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  return PnmParser(std::move(bytes), path.string()).Parse();
}

void WritePgm(const std::filesystem::path& path, const RealPlane& unit_values) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out << "P5\n" << unit_values.cols() << " " << unit_values.rows() << "\n255\n";
  std::vector<unsigned char> raster(unit_values.size());
  for (std::size_t i = 0; i < raster.size(); ++i) {
    const double v = std::clamp(unit_values.values()[i], 0.0, 1.0);
    raster[i] = static_cast<unsigned char>(std::lround(255.0 * v));
  }
  out.write(reinterpret_cast<const char*>(raster.data()), static_cast<std::streamsize>(raster.size()));
  if (!out) throw Error(ErrorCode::kIoError, "short write to " + path.string());
}

RealPlane NormalizeMinMax(const RealPlane& p) {
  RealPlane out(p.dims(), 0.5);
  if (p.empty()) return out;
  const auto [lo, hi] = std::minmax_element(p.values().begin(), p.values().end());
  const double range = *hi - *lo;
  if (!(range > 0.0)) return out;
  for (std::size_t i = 0; i < p.size(); ++i) out.values()[i] = (p.values()[i] - *lo) / range;
  return out;
}

}  // namespace rcae
