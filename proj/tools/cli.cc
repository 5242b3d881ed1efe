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

#include "cli.h"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <new>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rcae/bench.h"
#include "rcae/checkpoint.h"
#include "rcae/error.h"
#include "rcae/image_io.h"
#include "rcae/metrics.h"
#include "rcae/objective.h"
#include "rcae/version.h"

namespace rcae::cli {
namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

const char* PartitionName(BinPartition p) {
  return p == BinPartition::kRoundRobin ? "round-robin" : "row-blocks";
}

BinPartition ParsePartition(const std::string& s) {
  if (s == "row-blocks") return BinPartition::kRowBlocks;
  if (s == "round-robin") return BinPartition::kRoundRobin;
  throw Error(ErrorCode::kInvalidConfig, "unknown partition '" + s + "'");
}

const char* OrientationName(FilterOrientation o) {
  return o == FilterOrientation::kRotate180 ? "rotate180" : "transpose";
}

FilterOrientation ParseOrientation(const std::string& s) {
  if (s == "transpose") return FilterOrientation::kTranspose;
  if (s == "rotate180") return FilterOrientation::kRotate180;
  throw Error(ErrorCode::kInvalidConfig, "unknown orientation '" + s + "'");
}

// Reads known keys from one JSON object and rejects the rest.
class ObjectReader {
 public:
  ObjectReader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw Error(ErrorCode::kInvalidConfig, path_ + " must be an object");
  }

  template <typename T>
  void Read(const char* key, T& dst) {
    seen_.insert(key);
    auto it = obj_.find(key);
    if (it == obj_.end()) return;
    try {
      dst = it->template get<T>();
    } catch (const json::exception&) {
      throw Error(ErrorCode::kInvalidConfig, "wrong type for " + Name(key));
    }
  }

  template <typename E, typename Parse, typename Format>
  void ReadEnum(const char* key, E& dst, Parse parse, Format format) {
    std::string s = format(dst);
    Read(key, s);
    try {
      dst = parse(s);
    } catch (const Error& e) {
      throw Error(ErrorCode::kInvalidConfig, Name(key) + ": " + e.detail());
    }
  }

  // Nested object, or nullptr when absent.
  const json* Sub(const char* key) {
    seen_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  std::string Name(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  void Finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (seen_.count(it.key()) == 0) {
        throw Error(ErrorCode::kInvalidConfig, "unknown config key '" + Name(it.key()) + "'");
      }
    }
  }

 private:
  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

json ToJsonValue(const RunConfig& c) {
  const PipelineParams& p = c.params;
  json j;
  j["preset"] = c.preset;
  j["model"] = {{"image_size", p.dims.image_size},
                {"filter_size", p.dims.filter_size},
                {"channels", p.dims.channels},
                {"filters", p.dims.filters}};
  j["encoder"] = {{"seed", p.encoder.seed}, {"sigma_a", p.encoder.sigma_a}, {"sigma_b", p.encoder.sigma_b}};
  j["whitening"] = {{"method", WhitenMethodName(p.whiten.method)}, {"reg", p.whiten.reg}};
  j["solver"] = {{"lambda", p.solver.lambda},
                 {"cycles", p.solver.cycles},
                 {"eps_div", p.solver.eps_div},
                 {"mode", StatsModeName(p.solver.mode)},
                 {"tol_stop", p.solver.tol_stop},
                 {"workers", p.solver.workers},
                 {"partition", PartitionName(p.solver.partition)},
                 {"use_conjugate_symmetry", p.solver.use_conjugate_symmetry}};
  j["ingest_workers"] = p.ingest_workers;
  j["data"] = {{"train", c.data.train},
               {"eval", c.data.eval},
               {"limit", c.data.limit},
               {"eval_limit", c.data.eval_limit}};
  j["out_dir"] = c.out_dir;
  j["sweep"] = {{"variable", c.sweep.variable},
                {"grid", c.sweep.grid},
                {"repeats", c.sweep.repeats},
                {"warmup", c.sweep.warmup},
                {"batch_size", c.sweep.batch_size},
                {"timing_data", c.sweep.timing_data},
                {"timing_seed", c.sweep.timing_seed},
                {"lambda_min", c.sweep.lambda_min},
                {"lambda_max", c.sweep.lambda_max},
                {"lambda_points", c.sweep.lambda_points},
                {"checkpoint_every", c.sweep.checkpoint_every},
                {"smoothing_window", c.sweep.smoothing_window}};
  j["inference"] = {{"orientation", OrientationName(c.inference.orientation)},
                    {"crop_to_support", c.inference.crop_to_support}};
  j["filter_grid"] = {{"grid_cols", c.filter_grid.grid_cols},
                      {"grid_rows", c.filter_grid.grid_rows},
                      {"crop_to_support", c.filter_grid.crop_to_support},
                      {"support", c.filter_grid.support},
                      {"gap", c.filter_grid.gap}};
  return j;
}

RunConfig FromJsonValue(const json& root) {
  ObjectReader top(root, "");
  std::string preset = "desk";
  top.Read("preset", preset);
  RunConfig c = Preset(preset);
  PipelineParams& p = c.params;

  if (const json* m = top.Sub("model")) {
    ObjectReader r(*m, "model");
    r.Read("image_size", p.dims.image_size);
    r.Read("filter_size", p.dims.filter_size);
    r.Read("channels", p.dims.channels);
    r.Read("filters", p.dims.filters);
    r.Finish();
  }
  if (const json* e = top.Sub("encoder")) {
    ObjectReader r(*e, "encoder");
    r.Read("seed", p.encoder.seed);
    r.Read("sigma_a", p.encoder.sigma_a);
    r.Read("sigma_b", p.encoder.sigma_b);
    r.Finish();
  }
  if (const json* w = top.Sub("whitening")) {
    ObjectReader r(*w, "whitening");
    r.ReadEnum("method", p.whiten.method, ParseWhitenMethod, WhitenMethodName);
    r.Read("reg", p.whiten.reg);
    r.Finish();
  }
  if (const json* s = top.Sub("solver")) {
    ObjectReader r(*s, "solver");
    r.Read("lambda", p.solver.lambda);
    r.Read("cycles", p.solver.cycles);
    r.Read("eps_div", p.solver.eps_div);
    r.ReadEnum("mode", p.solver.mode, ParseStatsMode, StatsModeName);
    r.Read("tol_stop", p.solver.tol_stop);
    r.Read("workers", p.solver.workers);
    r.ReadEnum("partition", p.solver.partition, ParsePartition, PartitionName);
    r.Read("use_conjugate_symmetry", p.solver.use_conjugate_symmetry);
    r.Finish();
  }
  top.Read("ingest_workers", p.ingest_workers);
  if (const json* d = top.Sub("data")) {
    ObjectReader r(*d, "data");
    r.Read("train", c.data.train);
    r.Read("eval", c.data.eval);
    r.Read("limit", c.data.limit);
    r.Read("eval_limit", c.data.eval_limit);
    r.Finish();
  }
  top.Read("out_dir", c.out_dir);
  if (const json* s = top.Sub("sweep")) {
    ObjectReader r(*s, "sweep");
    r.Read("variable", c.sweep.variable);
    r.Read("grid", c.sweep.grid);
    r.Read("repeats", c.sweep.repeats);
    r.Read("warmup", c.sweep.warmup);
    r.Read("batch_size", c.sweep.batch_size);
    r.Read("timing_data", c.sweep.timing_data);
    r.Read("timing_seed", c.sweep.timing_seed);
    r.Read("lambda_min", c.sweep.lambda_min);
    r.Read("lambda_max", c.sweep.lambda_max);
    r.Read("lambda_points", c.sweep.lambda_points);
    r.Read("checkpoint_every", c.sweep.checkpoint_every);
    r.Read("smoothing_window", c.sweep.smoothing_window);
    r.Finish();
  }
  if (const json* i = top.Sub("inference")) {
    ObjectReader r(*i, "inference");
    r.ReadEnum("orientation", c.inference.orientation, ParseOrientation, OrientationName);
    r.Read("crop_to_support", c.inference.crop_to_support);
    r.Finish();
  }
  if (const json* g = top.Sub("filter_grid")) {
    ObjectReader r(*g, "filter_grid");
    r.Read("grid_cols", c.filter_grid.grid_cols);
    r.Read("grid_rows", c.filter_grid.grid_rows);
    r.Read("crop_to_support", c.filter_grid.crop_to_support);
    r.Read("support", c.filter_grid.support);
    r.Read("gap", c.filter_grid.gap);
    r.Finish();
  }
  top.Finish();
  return c;
}

Checkpoint LoadCheckpointOrExplain(const fs::path& path) {
  try {
    return LoadCheckpoint(path);
  } catch (const Error& e) {
    throw Error(e.code(), "cannot load checkpoint " + path.string() + ": " + e.detail());
  }
}

Image LoadInputImage(const fs::path& path, const ModelDims& dims, bool resample) {
  try {
    if (resample) return LoadImage(path, dims.image_size, dims.channels);
    const Image raw = ReadPnm(path);
    if (!(raw.dims() == dims.image_dims())) {
      std::ostringstream msg;
      msg << "image is " << raw.dims().rows << "x" << raw.dims().cols << " but the model expects "
          << dims.image_size << "x" << dims.image_size << " (pass --resample to crop and resample)";
      throw Error(ErrorCode::kDimMismatch, msg.str());
    }
    return PrepareImage(raw, dims.image_size, dims.channels);
  } catch (const Error& e) {
    throw Error(e.code(), "cannot use image " + path.string() + ": " + e.detail());
  }
}

std::string Fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

void PrintLoss(const LossBreakdown& loss, std::ostream& out) {
  out << "train loss: recon=" << Fmt(loss.recon) << " contractive=" << Fmt(loss.contractive)
      << " total=" << Fmt(loss.total) << " (n=" << loss.n << ", lambda=" << Fmt(loss.lambda)
      << ")\n";
}

std::vector<double> DefaultGrid(SweepVariable v) {
  switch (v) {
    case SweepVariable::kImageSize: return {32, 48, 64, 96, 128};
    case SweepVariable::kNumFilters: return {8, 16, 32, 64, 128};
    case SweepVariable::kFilterSize: return {4, 8, 12, 16};
    case SweepVariable::kTrainCount: return {8, 16, 32, 64};
    case SweepVariable::kLambda: break;
  }
  return {};
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
}

void EnsureParent(const fs::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw Error(ErrorCode::kIoError, "cannot create " + path.parent_path().string());
  }
}

}  // namespace

bool operator==(const RunConfig& a, const RunConfig& b) { return ToJsonValue(a) == ToJsonValue(b); }

RunConfig Preset(const std::string& name) {
  RunConfig c;
  c.preset = name;
  PipelineParams& p = c.params;
  p.encoder = EncoderSpec{1, 0.1, 0.01};
  p.solver.workers = 0;
  p.ingest_workers = 0;
  if (name == "desk") {
    p.dims = ModelDims{64, 8, 1, 32};
    p.solver.lambda = 1.0;
    p.solver.cycles = 10;
    p.solver.mode = StatsMode::kExact;
  } else if (name == "paper") {
    p.dims = ModelDims{244, 8, 1, 300};
    p.solver.lambda = 16.5;
    p.solver.cycles = 1;
    p.solver.mode = StatsMode::kLiteral;
  } else {
    throw Error(ErrorCode::kInvalidConfig, "unknown preset '" + name + "' (expected desk or paper)");
  }
  return c;
}

std::string ConfigToText(const RunConfig& config) { return ToJsonValue(config).dump(2) + "\n"; }

RunConfig ConfigFromText(const std::string& text) {
  json root;
  try {
    root = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidConfig, std::string("config is not valid JSON: ") + e.what());
  }
  if (root.is_object() && root.contains("artifact_version") && root.contains("config")) {
    return FromJsonValue(root.at("config"));
  }
  return FromJsonValue(root);
}

RunConfig LoadConfig(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kInvalidConfig, "cannot read config " + path.string());
  std::ostringstream text;
  text << f.rdbuf();
  return ConfigFromText(text.str());
}

void ApplyEnvOverrides(RunConfig& config) {
  if (const char* v = std::getenv("RCAE_DATA_DIR"); v != nullptr && *v != '\0') config.data.train = v;
  if (const char* v = std::getenv("RCAE_EVAL_DIR"); v != nullptr && *v != '\0') config.data.eval = v;
  if (const char* v = std::getenv("RCAE_OUT_DIR"); v != nullptr && *v != '\0') config.out_dir = v;
}

Dataset LoadData(const std::string& locator, const ModelDims& dims, std::size_t limit,
                 std::ostream& warnings) {
  if (locator.empty()) throw Error(ErrorCode::kInvalidConfig, "no data path given");
  if (IsSynthLocator(locator)) {
    SynthSpec spec = ParseSynthLocator(locator, dims.image_size, dims.channels);
    if (limit != 0 && static_cast<std::size_t>(spec.n) > limit) spec.n = static_cast<int>(limit);
    return SynthDataset(spec);
  }
  return LoadDataset(locator, dims.image_size, dims.channels, limit, &warnings);
}

void WriteRunMetadata(const fs::path& artifact, const std::string& command, const RunConfig& config,
                      const std::string& inputs_json) {
  json meta;
  meta["artifact_version"] = Version();
  meta["command"] = command;
  meta["config"] = ToJsonValue(config);
  meta["inputs"] = json::parse(inputs_json);
  WriteText(fs::path(artifact.string() + ".meta.json"), meta.dump(2) + "\n");
}

int ReportFailure(const std::exception& e, std::ostream& err) {
  err << "error: " << e.what() << "\n";
  if (const auto* re = dynamic_cast<const Error*>(&e)) {
    switch (CategoryOf(re->code())) {
      case ErrorCategory::kConfig: return kExitConfig;
      case ErrorCategory::kData: return kExitData;
      case ErrorCategory::kSolve: return kExitSolve;
    }
  }
  if (dynamic_cast<const fs::filesystem_error*>(&e) != nullptr) return kExitData;
  return kExitSolve;
}

int CmdTrain(const TrainArgs& args, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig& cfg = args.config;
    cfg.params.Validate();
    if (args.out.empty()) throw Error(ErrorCode::kInvalidConfig, "no output checkpoint path");

    TrainResult result;
    json inputs;
    Dataset train;
    if (!args.from_stats.empty()) {
      const StatsSnapshot snapshot = LoadStatsSnapshot(args.from_stats);
      result = TrainFromStats(snapshot, cfg.params);
      inputs["from_stats"] = args.from_stats.string();
      inputs["images"] = snapshot.stats.n_seen;
    } else {
      train = LoadData(cfg.data.train, cfg.params.dims, cfg.data.limit, err);
      out << "loaded " << train.size() << " training images from " << train.origin << "\n";
      result = Train(train, cfg.params);
      inputs["train"] = train.origin;
      inputs["images"] = train.size();
    }
    const SolveReport& rep = result.solve.report;
    out << "solved " << rep.bins_solved << " bins, " << rep.cycles_run << " cycle(s), mode "
        << StatsModeName(rep.mode) << ", " << rep.workers << " worker(s), " << Fmt(rep.total_ms)
        << " ms\n";

    if (result.stats.mode == StatsMode::kExact) {
      PrintLoss(LossSpectral(result.stats, result.solve.filters, cfg.params.solver.lambda), out);
    } else if (!train.empty()) {
      const Dataset white = ApplyWhitening(train, result.whitening);
      PrintLoss(LossSpatial(white.images, result.encoder, result.solve.filters, cfg.params.solver.lambda),
                out);
    } else {
      out << "train loss: unavailable (literal statistics carry no per-image spectra)\n";
    }

    EnsureParent(args.out);
    if (!args.save_stats.empty()) {
      EnsureParent(args.save_stats);
      SaveStatsSnapshot(StatsSnapshot{result.stats, cfg.params.encoder, result.whitening}, args.save_stats);
      out << "wrote statistics " << args.save_stats.string() << "\n";
    }
    SaveCheckpoint(result.ToCheckpoint(cfg.params), args.out);
    WriteRunMetadata(args.out, "train", cfg, inputs.dump());
    out << "wrote checkpoint " << args.out.string() << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    return ReportFailure(e, err);
  }
}

int CmdReconstruct(const ReconstructArgs& args, std::ostream& out, std::ostream& err) {
  try {
    const Checkpoint ckpt = LoadCheckpointOrExplain(args.checkpoint);
    const Image image = LoadInputImage(args.image, ckpt.dims, args.resample);
    const Image white = ApplyWhitening(image, ckpt.whitening);
    const RealPlane target = ChannelSum(white);
    const RealPlane recon = Reconstruct(white, ckpt.Encoder(), ckpt.filters);
    double err_sum = 0.0;
    for (std::size_t i = 0; i < target.size(); ++i) {
      const double diff = recon.values()[i] - target.values()[i];
      err_sum += diff * diff;
    }
    out << "reconstruction error: " << Fmt(err_sum)
        << " (per pixel " << Fmt(err_sum / static_cast<double>(target.size())) << ")\n";
    EnsureParent(args.out);
    WritePgm(args.out, SideBySide(target, recon));
    out << "wrote " << args.out.string() << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    return ReportFailure(e, err);
  }
}

int CmdEncode(const EncodeArgs& args, std::ostream& out, std::ostream& err) {
  try {
    if (args.format != "container" && args.format != "pgm") {
      throw Error(ErrorCode::kInvalidConfig, "unknown feature format '" + args.format + "'");
    }
    const Checkpoint ckpt = LoadCheckpointOrExplain(args.checkpoint);
    const Image image = LoadInputImage(args.image, ckpt.dims, args.resample);
    const Image white = ApplyWhitening(image, ckpt.whitening);
    const std::vector<RealPlane> maps = InferFeatures(white, ckpt.filters, ckpt.dims, args.inference);
    EnsureParent(args.out);
    if (args.format == "container") {
      SaveFeatureMaps(maps, args.out);
    } else {
      WritePgm(args.out, TileGrid(maps, 1, static_cast<int>(maps.size()), 1));
    }
    out << "wrote " << maps.size() << " feature maps of " << maps.front().rows() << "x"
        << maps.front().cols() << " to " << args.out.string() << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    return ReportFailure(e, err);
  }
}

int CmdSweep(const SweepArgs& args, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig& cfg = args.config;
    cfg.params.Validate();
    std::error_code ec;
    fs::create_directories(args.out_dir, ec);
    if (ec) throw Error(ErrorCode::kIoError, "cannot create " + args.out_dir.string());
    const SweepConfig& sw = cfg.sweep;
    MetricTable table;
    std::string summary;
    json inputs;
    fs::path csv;

    if (args.kind == "timing") {
      SweepSpec spec;
      spec.variable = ParseSweepVariable(sw.variable);
      spec.grid = sw.grid.empty() ? DefaultGrid(spec.variable) : sw.grid;
      spec.fixed = cfg.params;
      spec.repeats = sw.repeats;
      spec.warmup = sw.warmup;
      spec.batch_size = sw.batch_size;
      spec.data_kind = ParseSynthKind(sw.timing_data);
      spec.data_seed = sw.timing_seed;
      TimingSweepResult r = RunTimingSweep(spec);
      table = std::move(r.table);
      summary = r.summary;
      csv = args.out_dir / "timing.csv";
      inputs["variable"] = sw.variable;
    } else if (args.kind == "lambda") {
      const std::string train_loc =
          cfg.data.train.empty() ? "synth:bandlimited-noise,n=400,seed=11" : cfg.data.train;
      const std::string eval_loc =
          cfg.data.eval.empty() ? "synth:bandlimited-noise,n=100,seed=11,first=400" : cfg.data.eval;
      const Dataset train = LoadData(train_loc, cfg.params.dims, cfg.data.limit, err);
      const Dataset eval = LoadData(eval_loc, cfg.params.dims, cfg.data.eval_limit, err);
      LambdaSweepResult r = RunLambdaSweep(train, eval, LogSpace(sw.lambda_min, sw.lambda_max, sw.lambda_points),
                                           cfg.params);
      table = std::move(r.table);
      summary = r.summary;
      csv = args.out_dir / "lambda.csv";
      inputs["train"] = train.origin;
      inputs["eval"] = eval.origin;
    } else if (args.kind == "convergence") {
      const std::string loc =
          cfg.data.train.empty() ? "synth:bandlimited-noise,n=400,seed=11" : cfg.data.train;
      const Dataset stream = LoadData(loc, cfg.params.dims, cfg.data.limit, err);
      ConvergenceResult r = RunConvergenceCurve(stream, sw.checkpoint_every, cfg.params, sw.smoothing_window);
      table = std::move(r.table);
      summary = r.summary;
      csv = args.out_dir / "convergence.csv";
      inputs["train"] = stream.origin;
    } else {
      throw Error(ErrorCode::kInvalidConfig,
                  "unknown sweep kind '" + args.kind + "' (expected timing, lambda or convergence)");
    }
    ExportMetrics(table, csv);
    WriteText(fs::path(csv).replace_extension(".summary.txt"), summary);
    WriteRunMetadata(csv, "sweep " + args.kind, cfg, inputs.dump());
    out << summary << "wrote " << csv.string() << " (" << table.num_rows() << " rows)\n";
    return kExitOk;
  } catch (const std::exception& e) {
    return ReportFailure(e, err);
  }
}

int CmdExportFilters(const ExportArgs& args, std::ostream& out, std::ostream& err) {
  try {
    const Checkpoint ckpt = LoadCheckpointOrExplain(args.checkpoint);
    FilterGridOptions options = args.options;
    if (options.crop_to_support && options.support == 0) options.support = ckpt.dims.filter_size;
    EnsureParent(args.out);
    const FilterGridInfo info = ExportFilters(ckpt.filters, args.out, options);
    out << "wrote " << info.tiles << " filters as a " << info.grid_cols << "x" << info.grid_rows
        << " grid of " << info.tile_size << "px tiles to " << args.out.string() << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    return ReportFailure(e, err);
  }
}

}  // namespace rcae::cli
