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

#include "rcae/checkpoint.h"

#include "container.h"

namespace rcae {
namespace {

using internal::AsDoubles;
using internal::InArray;
using internal::OutArray;
using nlohmann::json;

constexpr char kCheckpointMagic[9] = "RCAECKPT";
constexpr char kStatsMagic[9] = "RCAESTAT";
constexpr char kFeatureMagic[9] = "RCAEFEAT";

json DimsToJson(const ModelDims& d) {
  return {{"image_size", d.image_size}, {"filter_size", d.filter_size},
          {"channels", d.channels}, {"filters", d.filters}};
}

ModelDims DimsFromJson(const json& j) {
  ModelDims d;
  d.image_size = j.at("image_size").get<int>();
  d.filter_size = j.at("filter_size").get<int>();
  d.channels = j.at("channels").get<int>();
  d.filters = j.at("filters").get<int>();
  d.Validate();
  return d;
}

json EncoderToJson(const EncoderSpec& e) {
  return {{"seed", e.seed}, {"sigma_a", e.sigma_a}, {"sigma_b", e.sigma_b}, {"activation", "tanh"}};
}

EncoderSpec EncoderFromJson(const json& j) {
  if (j.value("activation", "tanh") != "tanh") {
    throw Error(ErrorCode::kFormatError, "only tanh encoders are supported");
  }
  return {j.at("seed").get<std::uint64_t>(), j.at("sigma_a").get<double>(),
          j.at("sigma_b").get<double>()};
}

json WhiteningToJson(const WhiteningModel& w) {
  return {{"method", WhitenMethodName(w.config.method)}, {"reg", w.config.reg},
          {"stats_source", w.stats_source}, {"fitted_on", w.fitted_on}};
}

void AppendPlanes(OutArray& a, const std::vector<ComplexPlane>& planes) {
  for (const ComplexPlane& p : planes) a.chunks.push_back(AsDoubles(p.values()));
}

OutArray WhiteningArray(const WhiteningModel& w) {
  OutArray a{"whitening_amplitude", {}, false, {}};
  const int C = static_cast<int>(w.mean_amplitude.size());
  const PlaneDims dims = C > 0 ? w.mean_amplitude.front().dims() : PlaneDims{};
  a.shape = {C, dims.rows, dims.cols};
  for (const RealPlane& p : w.mean_amplitude) a.chunks.push_back(p.values());
  return a;
}

WhiteningModel WhiteningFromContainer(const internal::ContainerContents& c) {
  const json& j = c.header.at("whitening");
  WhiteningModel w;
  w.config.method = ParseWhitenMethod(j.at("method").get<std::string>());
  w.config.reg = j.at("reg").get<double>();
  w.stats_source = j.at("stats_source").get<std::string>();
  w.fitted_on = j.at("fitted_on").get<std::int64_t>();
  if (const InArray* a = c.Find("whitening_amplitude"); a != nullptr && a->shape.size() == 3) {
    const int rows = static_cast<int>(a->shape[1]);
    const int cols = static_cast<int>(a->shape[2]);
    const std::size_t plane = static_cast<std::size_t>(rows) * cols;
    for (std::int64_t ch = 0; ch < a->shape[0]; ++ch) {
      std::vector<double> data(a->values.begin() + ch * plane, a->values.begin() + (ch + 1) * plane);
      w.mean_amplitude.emplace_back(rows, cols, std::move(data));
    }
  }
  return w;
}

// Splits a complex array of shape [..., rows, cols] into planes.
std::vector<ComplexPlane> PlanesFrom(const InArray& a, std::size_t expected_planes, PlaneDims dims) {
  if (!a.complex || a.shape.size() < 2 || a.shape[a.shape.size() - 2] != dims.rows ||
      a.shape.back() != dims.cols || a.element_count() != expected_planes * dims.size()) {
    throw Error(ErrorCode::kFormatError, "array '" + a.name + "' has unexpected shape");
  }
  std::vector<ComplexPlane> planes;
  planes.reserve(expected_planes);
  const std::size_t plane_doubles = 2 * dims.size();
  for (std::size_t p = 0; p < expected_planes; ++p) {
    std::vector<Complex> data(dims.size());
    const double* src = a.values.data() + p * plane_doubles;
    for (std::size_t i = 0; i < dims.size(); ++i) data[i] = Complex(src[2 * i], src[2 * i + 1]);
    planes.emplace_back(dims.rows, dims.cols, std::move(data));
  }
  return planes;
}

template <typename Fn>
auto Guard(const std::filesystem::path& path, Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kFormatError, path.string() + ": " + e.what());
  }
}

}  // namespace

EncoderParams Checkpoint::Encoder() const {
  return InitEncoder(dims, encoder.seed, encoder.sigma_a, encoder.sigma_b);
}

void SaveCheckpoint(const Checkpoint& ckpt, const std::filesystem::path& path) {
  if (ckpt.filters.num_filters() != ckpt.dims.filters ||
      !(ckpt.filters.grid() == ckpt.dims.image_dims())) {
    throw Error(ErrorCode::kDimMismatch, "checkpoint filters do not match dims");
  }
  json header = {
      {"kind", "rcae-checkpoint"},
      {"dims", DimsToJson(ckpt.dims)},
      {"encoder", EncoderToJson(ckpt.encoder)},
      {"solver",
       {{"lambda", ckpt.lambda}, {"mode", StatsModeName(ckpt.mode)}, {"cycles", ckpt.cycles},
        {"eps_div", ckpt.eps_div}}},
      {"whitening", WhiteningToJson(ckpt.whitening)},
  };
  OutArray filters{"decoder_spectral", {ckpt.dims.filters, ckpt.dims.image_size, ckpt.dims.image_size}, true, {}};
  AppendPlanes(filters, ckpt.filters.spectral());
  internal::WriteContainer(path, kCheckpointMagic, std::move(header),
                           {filters, WhiteningArray(ckpt.whitening)});
}

Checkpoint LoadCheckpoint(const std::filesystem::path& path) {
  const auto c = internal::ReadContainer(path, kCheckpointMagic);
  return Guard(path, [&] {
    Checkpoint ckpt;
    ckpt.dims = DimsFromJson(c.header.at("dims"));
    ckpt.encoder = EncoderFromJson(c.header.at("encoder"));
    const json& s = c.header.at("solver");
    ckpt.lambda = s.at("lambda").get<double>();
    ckpt.mode = ParseStatsMode(s.at("mode").get<std::string>());
    ckpt.cycles = s.at("cycles").get<int>();
    ckpt.eps_div = s.at("eps_div").get<double>();
    ckpt.whitening = WhiteningFromContainer(c);
    ckpt.filters = DecoderFilters(PlanesFrom(c.Get("decoder_spectral"), ckpt.dims.filters,
                                             ckpt.dims.image_dims()));
    return ckpt;
  });
}

void SaveStatsSnapshot(const StatsSnapshot& snapshot, const std::filesystem::path& path) {
  const SufficientStats& st = snapshot.stats;
  const int K = st.dims.filters;
  const int d = st.dims.image_size;
  json header = {
      {"kind", "rcae-stats"},
      {"dims", DimsToJson(st.dims)},
      {"encoder", EncoderToJson(snapshot.encoder)},
      {"mode", StatsModeName(st.mode)},
      {"n_seen", st.n_seen},
      {"whitening", WhiteningToJson(snapshot.whitening)},
  };
  OutArray h_sum{"H_sum", {K, d, d}, true, {}};
  OutArray d_sum{"D_sum", {K, d, d}, true, {}};
  OutArray x_sum{"X_sum", {d, d}, true, {AsDoubles(st.X_sum.values())}};
  AppendPlanes(h_sum, st.H_sum);
  AppendPlanes(d_sum, st.D_sum);
  std::vector<OutArray> arrays{h_sum, x_sum, d_sum, WhiteningArray(snapshot.whitening)};
  if (st.mode == StatsMode::kExact) {
    const auto N = static_cast<std::int64_t>(st.samples.size());
    OutArray h{"sample_H", {N, K, d, d}, true, {}};
    OutArray x{"sample_X", {N, d, d}, true, {}};
    OutArray dd{"sample_D", {N, K, d, d}, true, {}};
    for (const auto& s : st.samples) {
      AppendPlanes(h, s->H);
      x.chunks.push_back(AsDoubles(s->X.values()));
      AppendPlanes(dd, s->D);
    }
    arrays.push_back(std::move(h));
    arrays.push_back(std::move(x));
    arrays.push_back(std::move(dd));
  }
  internal::WriteContainer(path, kStatsMagic, std::move(header), arrays);
}

StatsSnapshot LoadStatsSnapshot(const std::filesystem::path& path) {
  const auto c = internal::ReadContainer(path, kStatsMagic);
  return Guard(path, [&] {
    StatsSnapshot snap;
    const ModelDims dims = DimsFromJson(c.header.at("dims"));
    const StatsMode mode = ParseStatsMode(c.header.at("mode").get<std::string>());
    snap.encoder = EncoderFromJson(c.header.at("encoder"));
    snap.whitening = WhiteningFromContainer(c);
    SufficientStats& st = snap.stats;
    st.dims = dims;
    st.mode = mode;
    st.n_seen = c.header.at("n_seen").get<std::int64_t>();
    const std::size_t K = static_cast<std::size_t>(dims.filters);
    st.H_sum = PlanesFrom(c.Get("H_sum"), K, dims.image_dims());
    st.D_sum = PlanesFrom(c.Get("D_sum"), K, dims.image_dims());
    st.X_sum = PlanesFrom(c.Get("X_sum"), 1, dims.image_dims()).front();
    if (mode == StatsMode::kExact) {
      const std::size_t N = static_cast<std::size_t>(st.n_seen);
      auto h = PlanesFrom(c.Get("sample_H"), N * K, dims.image_dims());
      auto x = PlanesFrom(c.Get("sample_X"), N, dims.image_dims());
      auto dd = PlanesFrom(c.Get("sample_D"), N * K, dims.image_dims());
      for (std::size_t n = 0; n < N; ++n) {
        auto s = std::make_shared<SpectralSample>();
        s->H.assign(std::make_move_iterator(h.begin() + n * K), std::make_move_iterator(h.begin() + (n + 1) * K));
        s->D.assign(std::make_move_iterator(dd.begin() + n * K), std::make_move_iterator(dd.begin() + (n + 1) * K));
        s->X = std::move(x[n]);
        st.samples.push_back(std::move(s));
      }
    }
    return snap;
  });
}

void SaveFeatureMaps(const std::vector<RealPlane>& maps, const std::filesystem::path& path) {
  if (maps.empty()) throw Error(ErrorCode::kInvalidSpec, "no feature maps to save");
  const PlaneDims dims = maps.front().dims();
  OutArray a{"features", {static_cast<std::int64_t>(maps.size()), dims.rows, dims.cols}, false, {}};
  for (const RealPlane& m : maps) {
    if (!(m.dims() == dims)) throw Error(ErrorCode::kDimMismatch, "feature maps differ in dims");
    a.chunks.push_back(m.values());
  }
  internal::WriteContainer(path, kFeatureMagic, {{"kind", "rcae-features"}}, {a});
}

std::vector<RealPlane> LoadFeatureMaps(const std::filesystem::path& path) {
  const auto c = internal::ReadContainer(path, kFeatureMagic);
  const InArray& a = c.Get("features");
  if (a.complex || a.shape.size() != 3) throw Error(ErrorCode::kFormatError, "bad feature array");
  const int rows = static_cast<int>(a.shape[1]);
  const int cols = static_cast<int>(a.shape[2]);
  const std::size_t plane = static_cast<std::size_t>(rows) * cols;
  std::vector<RealPlane> maps;
  for (std::int64_t k = 0; k < a.shape[0]; ++k) {
    maps.emplace_back(rows, cols,
                      std::vector<double>(a.values.begin() + k * plane, a.values.begin() + (k + 1) * plane));
  }
  return maps;
}

}  // namespace rcae
