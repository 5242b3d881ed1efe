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

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cli.h"
#include "rcae/error.h"
#include "rcae/version.h"

namespace {

using rcae::cli::RunConfig;

// Flags shared by commands that take a full run configuration.
struct ConfigFlags {
  std::string config_path;
  std::string preset;
  std::string data;
  std::string eval;
  std::string out_dir;
  std::optional<int> threads;
  std::optional<double> lambda;
  std::optional<int> cycles;
  std::string mode;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> limit;

  void Attach(CLI::App* app) {
    app->add_option("--config", config_path, "JSON config file (comments allowed) or run metadata file");
    app->add_option("--preset", preset, "desk or paper")
        ->check(CLI::IsMember({"desk", "paper"}));
    app->add_option("--data", data, "training images: directory or synth:<kind>[,n=..][,seed=..]");
    app->add_option("--eval", eval, "held-out images (lambda sweep)");
    app->add_option("--out-dir", out_dir, "output directory");
    app->add_option("--threads", threads, "solver and ingest threads (0 = all cores)");
    app->add_option("--lambda", lambda, "regularization weight");
    app->add_option("--cycles", cycles, "coordinate descent cycles");
    app->add_option("--mode", mode, "statistics mode")->check(CLI::IsMember({"literal", "exact"}));
    app->add_option("--seed", seed, "encoder seed");
    app->add_option("--limit", limit, "maximum number of training images");
  }

  // Precedence: command-line flags, then environment, then config file.
  RunConfig Resolve() const {
    RunConfig cfg = config_path.empty() ? rcae::cli::Preset(preset.empty() ? "desk" : preset)
                                        : rcae::cli::LoadConfig(config_path);
    if (!config_path.empty() && !preset.empty() && preset != cfg.preset) {
      throw rcae::Error(rcae::ErrorCode::kInvalidConfig,
                        "--preset " + preset + " conflicts with the config's preset " + cfg.preset);
    }
    rcae::cli::ApplyEnvOverrides(cfg);
    if (!data.empty()) cfg.data.train = data;
    if (!eval.empty()) cfg.data.eval = eval;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (threads) {
      cfg.params.solver.workers = *threads;
      cfg.params.ingest_workers = *threads;
    }
    if (lambda) cfg.params.solver.lambda = *lambda;
    if (cycles) cfg.params.solver.cycles = *cycles;
    if (!mode.empty()) cfg.params.solver.mode = rcae::ParseStatsMode(mode);
    if (seed) cfg.params.encoder.seed = *seed;
    if (limit) cfg.data.limit = *limit;
    return cfg;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convolutional auto-encoder training by random convexification and per-bin coordinate descent"};
  app.set_version_flag("--version", rcae::Version());
  app.require_subcommand(1);

  ConfigFlags train_flags;
  rcae::cli::TrainArgs train;
  std::string train_out, save_stats, from_stats;
  bool print_config = false;
  CLI::App* train_cmd = app.add_subcommand("train", "train decoding filters and write a checkpoint");
  train_flags.Attach(train_cmd);
  train_cmd->add_option("--out,-o", train_out, "checkpoint path (default <out-dir>/model.rcae)");
  train_cmd->add_option("--save-stats", save_stats, "also write the sufficient statistics");
  train_cmd->add_option("--from-stats", from_stats, "solve from saved statistics instead of data");
  train_cmd->add_flag("--print-config", print_config, "print the resolved config and exit");

  rcae::cli::ReconstructArgs recon;
  std::string recon_ckpt, recon_image, recon_out;
  CLI::App* recon_cmd = app.add_subcommand("reconstruct", "reconstruct one image through a checkpoint");
  recon_cmd->add_option("--checkpoint,-c", recon_ckpt, "checkpoint")->required();
  recon_cmd->add_option("--image,-i", recon_image, "input PGM/PPM")->required();
  recon_cmd->add_option("--out,-o", recon_out, "side-by-side output PGM")->required();
  recon_cmd->add_flag("--resample", recon.resample, "crop and resample the image to the model size");

  rcae::cli::EncodeArgs encode;
  std::string enc_ckpt, enc_image, enc_out, orientation = "transpose";
  bool full_support = false;
  CLI::App* enc_cmd = app.add_subcommand("encode", "write the feature maps of one image");
  enc_cmd->add_option("--checkpoint,-c", enc_ckpt, "checkpoint")->required();
  enc_cmd->add_option("--image,-i", enc_image, "input PGM/PPM")->required();
  enc_cmd->add_option("--out,-o", enc_out, "output file")->required();
  enc_cmd->add_option("--format", encode.format, "container or pgm")
      ->check(CLI::IsMember({"container", "pgm"}));
  enc_cmd->add_option("--orientation", orientation, "filter orientation at inference")
      ->check(CLI::IsMember({"transpose", "rotate180"}));
  enc_cmd->add_flag("--full-support", full_support, "use the full d x d filters (1 x 1 maps)");
  enc_cmd->add_flag("--resample", encode.resample, "crop and resample the image to the model size");

  ConfigFlags sweep_flags;
  rcae::cli::SweepArgs sweep;
  std::string variable;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a timing, lambda or convergence sweep");
  sweep_cmd->add_option("kind", sweep.kind, "timing | lambda | convergence")
      ->required()
      ->check(CLI::IsMember({"timing", "lambda", "convergence"}));
  sweep_flags.Attach(sweep_cmd);
  sweep_cmd->add_option("--variable", variable, "timing variable: image_size, num_filters, filter_size, train_count");

  rcae::cli::ExportArgs exp;
  std::string exp_ckpt, exp_out;
  CLI::App* exp_cmd = app.add_subcommand("export-filters", "write the decoding filters as a PGM grid");
  exp_cmd->add_option("--checkpoint,-c", exp_ckpt, "checkpoint")->required();
  exp_cmd->add_option("--out,-o", exp_out, "output PGM")->required();
  exp_cmd->add_option("--grid-cols", exp.options.grid_cols, "tiles per row (0 = square-ish)");
  exp_cmd->add_flag("--crop", exp.options.crop_to_support, "crop filters to their w x w support");
  exp_cmd->add_option("--support", exp.options.support, "crop size (default w)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : rcae::cli::kExitConfig;
  }

  try {
    if (train_cmd->parsed()) {
      train.config = train_flags.Resolve();
      if (print_config) {
        std::cout << rcae::cli::ConfigToText(train.config);
        return rcae::cli::kExitOk;
      }
      train.out = train_out.empty() ? std::filesystem::path(train.config.out_dir) / "model.rcae"
                                    : std::filesystem::path(train_out);
      train.save_stats = save_stats;
      train.from_stats = from_stats;
      return rcae::cli::CmdTrain(train, std::cout, std::cerr);
    }
    if (recon_cmd->parsed()) {
      recon.checkpoint = recon_ckpt;
      recon.image = recon_image;
      recon.out = recon_out;
      return rcae::cli::CmdReconstruct(recon, std::cout, std::cerr);
    }
    if (enc_cmd->parsed()) {
      encode.checkpoint = enc_ckpt;
      encode.image = enc_image;
      encode.out = enc_out;
      encode.inference.orientation = orientation == "rotate180" ? rcae::FilterOrientation::kRotate180
                                                                : rcae::FilterOrientation::kTranspose;
      encode.inference.crop_to_support = !full_support;
      return rcae::cli::CmdEncode(encode, std::cout, std::cerr);
    }
    if (sweep_cmd->parsed()) {
      sweep.config = sweep_flags.Resolve();
      if (!variable.empty()) sweep.config.sweep.variable = variable;
      sweep.out_dir = sweep.config.out_dir;
      return rcae::cli::CmdSweep(sweep, std::cout, std::cerr);
    }
    if (exp_cmd->parsed()) {
      exp.checkpoint = exp_ckpt;
      exp.out = exp_out;
      return rcae::cli::CmdExportFilters(exp, std::cout, std::cerr);
    }
  } catch (const std::exception& e) {
    return rcae::cli::ReportFailure(e, std::cerr);
  }
  return rcae::cli::kExitConfig;
}
