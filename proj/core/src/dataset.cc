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

#include "rcae/dataset.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "rcae/image_io.h"

namespace rcae {
namespace {

namespace fs = std::filesystem;

// Weights mapping `src` samples onto `dst` equal-width bins by overlap.
std::vector<std::vector<std::pair<int, double>>> AreaWeights(int src, int dst) {
  std::vector<std::vector<std::pair<int, double>>> weights(dst);
  const double step = static_cast<double>(src) / dst;
  for (int i = 0; i < dst; ++i) {
    const double lo = i * step;
    const double hi = (i + 1) * step;
    for (int j = static_cast<int>(std::floor(lo)); j < src && j < hi; ++j) {
      const double overlap = std::min(hi, j + 1.0) - std::max(lo, static_cast<double>(j));
      if (overlap > 0.0) weights[i].emplace_back(j, overlap / step);
    }
  }
  return weights;
}

RealPlane CropResize(const RealPlane& p, int side, int d) {
  const int r0 = (p.rows() - side) / 2;
  const int c0 = (p.cols() - side) / 2;
  if (side == d) {
    RealPlane out(d, d);
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) out(r, c) = p(r0 + r, c0 + c);
    }
    return out;
  }
  const auto weights = AreaWeights(side, d);
  RealPlane rows_done(side, d);
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < d; ++c) {
      double acc = 0.0;
      for (const auto& [j, wt] : weights[c]) acc += wt * p(r0 + r, c0 + j);
      rows_done(r, c) = acc;
    }
  }
  RealPlane out(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      double acc = 0.0;
      for (const auto& [j, wt] : weights[r]) acc += wt * rows_done(j, c);
      out(r, c) = acc;
    }
  }
  return out;
}

bool IsImageFile(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char ch) { return std::tolower(ch); });
  return ext == ".pgm" || ext == ".ppm" || ext == ".pnm";
}

std::mt19937_64 ImageRng(const SynthSpec& spec, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(spec.seed & 0xffffffffu),
                    static_cast<std::uint32_t>(spec.seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(spec.kind)};
  return std::mt19937_64(seq);
}

RealPlane GaussianBlobs(std::mt19937_64& rng, int d) {
  std::uniform_int_distribution<int> count(6, 12);
  std::uniform_real_distribution<double> pos(0.0, d);
  std::uniform_real_distribution<double> width(d / 16.0, d / 5.0);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  RealPlane out(d, d);
  const int blobs = count(rng);
  for (int b = 0; b < blobs; ++b) {
    const double cy = pos(rng), cx = pos(rng), s = width(rng), a = amp(rng);
    const double inv = 1.0 / (2.0 * s * s);
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) {
        const double dy = r - cy, dx = c - cx;
        out(r, c) += a * std::exp(-(dx * dx + dy * dy) * inv);
      }
    }
  }
  return out;
}

RealPlane GaborTextures(std::mt19937_64& rng, int d) {
  std::uniform_int_distribution<int> count(3, 6);
  std::uniform_real_distribution<double> pos(0.0, d);
  std::uniform_real_distribution<double> freq(0.05, 0.25);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> width(d / 8.0, d / 3.0);
  RealPlane out(d, d);
  const int patches = count(rng);
  for (int g = 0; g < patches; ++g) {
    const double cy = pos(rng), cx = pos(rng), f = freq(rng), th = angle(rng), ph = phase(rng),
                 s = width(rng);
    const double kx = 2.0 * std::numbers::pi * f * std::cos(th);
    const double ky = 2.0 * std::numbers::pi * f * std::sin(th);
    const double inv = 1.0 / (2.0 * s * s);
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) {
        const double dy = r - cy, dx = c - cx;
        out(r, c) += std::exp(-(dx * dx + dy * dy) * inv) * std::cos(kx * dx + ky * dy + ph);
      }
    }
  }
  return out;
}

RealPlane BandlimitedNoise(std::mt19937_64& rng, int d, double band) {
  std::normal_distribution<double> noise(0.0, 1.0);
  RealPlane white(d, d);
  for (double& v : white.values()) v = noise(rng);
  ComplexPlane spectrum = Dft2(white);
  const double cutoff = band * d / 2.0;
  double kept = 0.0;
  for (int u = 0; u < d; ++u) {
    const int fu = u <= d / 2 ? u : u - d;
    for (int v = 0; v < d; ++v) {
      const int fv = v <= d / 2 ? v : v - d;
      if (std::hypot(fu, fv) > cutoff) {
        spectrum(u, v) = Complex(0.0, 0.0);
      } else {
        kept += 1.0;
      }
    }
  }
  RealPlane out = Idft2(spectrum);
  // Unit expected pixel variance.
  if (kept > 0.0) {
    const double scale = std::sqrt(static_cast<double>(spectrum.size()) / kept);
    for (double& v : out.values()) v *= scale;
  }
  return out;
}

}  // namespace

Dataset Dataset::Slice(std::size_t begin, std::size_t end) const {
  end = std::min(end, images.size());
  begin = std::min(begin, end);
  Dataset out;
  out.images.assign(images.begin() + begin, images.begin() + end);
  out.sources.assign(sources.begin() + begin, sources.begin() + end);
  out.origin = origin;
  out.image_size = image_size;
  out.channels = channels;
  return out;
}

Image PrepareImage(const Image& raw, int d, int channels) {
  if (raw.channels.empty()) throw Error(ErrorCode::kDecodeFailure, "image has no channels");
  if (channels != 1 && channels != raw.num_channels() && raw.num_channels() != 1) {
    throw Error(ErrorCode::kDimMismatch, "cannot map " + std::to_string(raw.num_channels()) +
                                             " channels onto " + std::to_string(channels));
  }
  std::vector<RealPlane> planes;
  if (channels == 1 && raw.num_channels() == 3) {
    RealPlane luma(raw.dims());
    for (std::size_t i = 0; i < luma.size(); ++i) {
      luma.values()[i] = 0.299 * raw.channels[0].values()[i] +
                         0.587 * raw.channels[1].values()[i] +
                         0.114 * raw.channels[2].values()[i];
    }
    planes.push_back(std::move(luma));
  } else if (channels == 1) {
    planes.push_back(raw.channels.front());
  } else if (raw.num_channels() == 1) {
    planes.assign(channels, raw.channels.front());
  } else {
    planes = raw.channels;
  }
  const int side = std::min(planes.front().rows(), planes.front().cols());
  if (side < d) {
    throw Error(ErrorCode::kDimUnderflow, "center crop of " + std::to_string(side) +
                                              " pixels is smaller than d = " + std::to_string(d));
  }
  Image out;
  for (const RealPlane& p : planes) out.channels.push_back(CropResize(p, side, d));
  return out;
}

Image LoadImage(const std::filesystem::path& path, int d, int channels) {
  return PrepareImage(ReadPnm(path), d, channels);
}

Dataset LoadDataset(const std::filesystem::path& dir, int d, int channels, std::size_t limit,
                    std::ostream* warnings) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw Error(ErrorCode::kUnreadablePath, dir.string() + " is not a readable directory");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && IsImageFile(entry.path())) files.push_back(entry.path());
  }
  if (ec) throw Error(ErrorCode::kUnreadablePath, "cannot list " + dir.string());
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });

  Dataset ds;
  ds.origin = dir.string();
  ds.image_size = d;
  ds.channels = channels;
  for (const fs::path& f : files) {
    if (limit != 0 && ds.size() >= limit) break;
    try {
      ds.images.push_back(LoadImage(f, d, channels));
      ds.sources.push_back(fs::weakly_canonical(f).string());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDecodeFailure && e.code() != ErrorCode::kUnreadablePath) throw;
      if (warnings != nullptr) *warnings << "warning: skipping " << f.string() << ": " << e.what() << "\n";
    }
  }
  if (ds.empty()) throw Error(ErrorCode::kUnreadablePath, "no decodable images in " + dir.string());
  return ds;
}

const char* SynthKindName(SynthKind kind) {
  switch (kind) {
    case SynthKind::kGaussianBlobs: return "gaussian-blobs";
    case SynthKind::kGaborTextures: return "gabor-textures";
    case SynthKind::kBandlimitedNoise: return "bandlimited-noise";
  }
  return "unknown";
}

SynthKind ParseSynthKind(const std::string& name) {
  if (name == "gaussian-blobs") return SynthKind::kGaussianBlobs;
  if (name == "gabor-textures") return SynthKind::kGaborTextures;
  if (name == "bandlimited-noise") return SynthKind::kBandlimitedNoise;
  throw Error(ErrorCode::kInvalidSpec, "unknown synthetic kind '" + name + "'");
}

Dataset SynthDataset(const SynthSpec& spec) {
  if (spec.n < 1 || spec.image_size < 1 || spec.channels < 1 || spec.first_index < 0) {
    throw Error(ErrorCode::kInvalidSpec, "synthetic dataset needs n, d, C >= 1");
  }
  if (spec.kind == SynthKind::kBandlimitedNoise && !(spec.band > 0.0)) {
    throw Error(ErrorCode::kInvalidSpec, "band must be positive");
  }
  Dataset ds;
  std::ostringstream origin;
  origin << "synthetic:" << SynthKindName(spec.kind) << ":seed=" << spec.seed;
  ds.origin = origin.str();
  ds.image_size = spec.image_size;
  ds.channels = spec.channels;
  for (int i = 0; i < spec.n; ++i) {
    const int index = spec.first_index + i;
    std::mt19937_64 rng = ImageRng(spec, index);
    Image img;
    for (int c = 0; c < spec.channels; ++c) {
      switch (spec.kind) {
        case SynthKind::kGaussianBlobs: img.channels.push_back(GaussianBlobs(rng, spec.image_size)); break;
        case SynthKind::kGaborTextures: img.channels.push_back(GaborTextures(rng, spec.image_size)); break;
        case SynthKind::kBandlimitedNoise:
          img.channels.push_back(BandlimitedNoise(rng, spec.image_size, spec.band));
          break;
      }
    }
    ds.images.push_back(std::move(img));
    ds.sources.push_back(ds.origin + ":" + std::to_string(index));
  }
  return ds;
}

bool IsSynthLocator(const std::string& locator) { return locator.rfind("synth:", 0) == 0; }

SynthSpec ParseSynthLocator(const std::string& locator, int image_size, int channels) {
  if (!IsSynthLocator(locator)) {
    throw Error(ErrorCode::kInvalidSpec, "'" + locator + "' is not a synth: locator");
  }
  std::vector<std::string> parts;
  std::stringstream in(locator.substr(6));
  for (std::string part; std::getline(in, part, ',');) parts.push_back(part);
  if (parts.empty()) throw Error(ErrorCode::kInvalidSpec, "synth: locator needs a kind");
  SynthSpec spec;
  spec.kind = ParseSynthKind(parts[0]);
  spec.image_size = image_size;
  spec.channels = channels;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const std::size_t eq = parts[i].find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kInvalidSpec, "expected key=value in '" + parts[i] + "'");
    }
    const std::string key = parts[i].substr(0, eq);
    const std::string value = parts[i].substr(eq + 1);
    try {
      std::size_t used = 0;
      if (key == "n") {
        spec.n = std::stoi(value, &used);
      } else if (key == "seed") {
        spec.seed = std::stoull(value, &used);
      } else if (key == "band") {
        spec.band = std::stod(value, &used);
      } else if (key == "first") {
        spec.first_index = std::stoi(value, &used);
      } else {
        throw Error(ErrorCode::kInvalidSpec, "unknown synth: key '" + key + "'");
      }
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::kInvalidSpec, "bad value for synth: key '" + key + "'");
    }
  }
  return spec;
}

std::string FormatSynthLocator(const SynthSpec& spec) {
  std::ostringstream out;
  out.precision(17);
  out << "synth:" << SynthKindName(spec.kind) << ",n=" << spec.n << ",seed=" << spec.seed
      << ",band=" << spec.band << ",first=" << spec.first_index;
  return out.str();
}

void RequireDisjoint(const Dataset& a, const Dataset& b) {
  const std::set<std::string> seen(a.sources.begin(), a.sources.end());
  for (const std::string& s : b.sources) {
    if (seen.count(s) != 0) {
      throw Error(ErrorCode::kOverlappingSplits, "image '" + s + "' is in both splits");
    }
  }
}

}  // namespace rcae
