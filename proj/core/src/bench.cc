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

#include "rcae/bench.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace rcae {
namespace {

using Clock = std::chrono::steady_clock;

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

bool IsTimingVariable(SweepVariable v) { return v != SweepVariable::kLambda; }

PipelineParams ParamsAt(const SweepSpec& spec, double value) {
  PipelineParams p = spec.fixed;
  p.solver.workers = 1;
  p.ingest_workers = 1;
  const int iv = static_cast<int>(std::lround(value));
  switch (spec.variable) {
    case SweepVariable::kImageSize: p.dims.image_size = iv; break;
    case SweepVariable::kNumFilters: p.dims.filters = iv; break;
    case SweepVariable::kFilterSize: p.dims.filter_size = iv; break;
    case SweepVariable::kTrainCount:
    case SweepVariable::kLambda:
      break;
  }
  return p;
}

double FitAbscissa(SweepVariable v, double value) {
  return v == SweepVariable::kImageSize ? value * value : value;
}

// Mean over the batch of ||sum_k W H_n - X_n||^2 / d^2.
double SpectralReconError(const std::vector<SpectralSample>& samples, const DecoderFilters& dec) {
  double total = 0.0;
  for (const SpectralSample& s : samples) {
    double err = 0.0;
    for (std::size_t b = 0; b < s.X.size(); ++b) {
      Complex residual = -s.X.values()[b];
      for (int k = 0; k < dec.num_filters(); ++k) {
        residual += dec.spectral(k).values()[b] * s.H[k].values()[b];
      }
      err += std::norm(residual);
    }
    total += err / static_cast<double>(s.X.size());
  }
  return total / static_cast<double>(samples.size());
}

}  // namespace

const char* SweepVariableName(SweepVariable v) {
  switch (v) {
    case SweepVariable::kImageSize: return "image_size";
    case SweepVariable::kNumFilters: return "num_filters";
    case SweepVariable::kFilterSize: return "filter_size";
    case SweepVariable::kLambda: return "lambda";
    case SweepVariable::kTrainCount: return "train_count";
  }
  return "unknown";
}

SweepVariable ParseSweepVariable(const std::string& name) {
  for (SweepVariable v : {SweepVariable::kImageSize, SweepVariable::kNumFilters,
                          SweepVariable::kFilterSize, SweepVariable::kLambda,
                          SweepVariable::kTrainCount}) {
    if (name == SweepVariableName(v)) return v;
  }
  throw Error(ErrorCode::kInvalidSpec, "unknown sweep variable '" + name + "'");
}

FitReport LinearFit(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw Error(ErrorCode::kInvalidSpec, "fit inputs differ in length");
  FitReport fit;
  for (std::size_t i = 0; i < xs.size(); ++i) fit.points.emplace_back(xs[i], ys[i]);
  const double n = static_cast<double>(xs.size());
  if (xs.empty()) return fit;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) {
    fit.intercept = my;
    return fit;
  }
  fit.degenerate = false;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
  return fit;
}

TimingSweepResult RunTimingSweep(const SweepSpec& spec) {
  if (!IsTimingVariable(spec.variable)) {
    throw Error(ErrorCode::kInvalidSpec, "lambda is not a timing variable");
  }
  if (spec.grid.empty()) throw Error(ErrorCode::kInvalidSpec, "empty sweep grid");
  for (std::size_t i = 1; i < spec.grid.size(); ++i) {
    if (!(spec.grid[i] > spec.grid[i - 1])) {
      throw Error(ErrorCode::kInvalidSpec, "sweep grid must be strictly increasing");
    }
  }
  if (spec.repeats < 3) throw Error(ErrorCode::kInvalidSpec, "timing sweeps need repeats >= 3");
  if (spec.warmup < 0 || spec.batch_size < 1) {
    throw Error(ErrorCode::kInvalidSpec, "warmup must be >= 0 and batch_size >= 1");
  }

  TimingSweepResult result;
  result.table = MetricTable({"sweep_var", "value", "cpu_ms"});
  const std::string name = SweepVariableName(spec.variable);
  std::vector<double> xs, xs_secondary;
  for (double value : spec.grid) {
    const PipelineParams p = ParamsAt(spec, value);
    p.Validate();
    SynthSpec data;
    data.kind = spec.data_kind;
    data.n = spec.variable == SweepVariable::kTrainCount ? static_cast<int>(std::lround(value))
                                                          : spec.batch_size;
    data.image_size = p.dims.image_size;
    data.channels = p.dims.channels;
    data.seed = spec.data_seed;
    const Dataset white = Whiten(SynthDataset(data), p.whiten);
    const EncoderParams enc = InitEncoder(p.dims, p.encoder.seed, p.encoder.sigma_a, p.encoder.sigma_b);

    auto run_once = [&] {
      const auto start = Clock::now();
      const SufficientStats stats = Ingest(white.images, enc, p.solver.mode, 1);
      const SolveResult solved = Solve(stats, p.dims, p.solver);
      const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
      // Keep the solve observable.
      if (solved.filters.num_filters() != p.dims.filters) throw Error(ErrorCode::kInvalidSpec, "bad solve");
      return ms;
    };
    for (int w = 0; w < spec.warmup; ++w) run_once();
    std::vector<double> times;
    for (int r = 0; r < spec.repeats; ++r) {
      times.push_back(run_once());
      result.table.AddRow({name, value, times.back()});
    }
    const double med = Median(times);
    result.table.AddRow({name + "_median", value, med});
    result.medians_ms.push_back(med);
    result.point_params.push_back(p);
    xs.push_back(FitAbscissa(spec.variable, value));
    xs_secondary.push_back(value * value);
  }
  for (std::size_t i = 1; i < result.medians_ms.size(); ++i) {
    if (result.medians_ms[i] < result.medians_ms[i - 1]) result.monotone = false;
  }
  result.fit = LinearFit(xs, result.medians_ms);
  if (spec.variable == SweepVariable::kFilterSize) {
    result.secondary_fit = LinearFit(xs_secondary, result.medians_ms);
  }

  std::ostringstream s;
  s << "timing sweep over " << name << " (" << spec.grid.size() << " points, median of "
    << spec.repeats << ")\n";
  for (std::size_t i = 0; i < spec.grid.size(); ++i) {
    s << "  " << name << "=" << spec.grid[i] << "  median_ms=" << result.medians_ms[i] << "\n";
  }
  const char* axis = spec.variable == SweepVariable::kImageSize ? "pixels (d^2)" : name.c_str();
  if (result.fit.degenerate) {
    s << "  fit: degenerate (single point)\n";
  } else {
    s << "  fit vs " << axis << ": slope=" << result.fit.slope << " intercept=" << result.fit.intercept
      << " r2=" << result.fit.r_squared << "\n";
  }
  if (spec.variable == SweepVariable::kFilterSize && !result.secondary_fit.degenerate) {
    s << "  fit vs w^2: slope=" << result.secondary_fit.slope << " r2=" << result.secondary_fit.r_squared
      << "\n";
  }
  s << "  monotone non-decreasing: " << (result.monotone ? "yes" : "no") << "\n";
  result.summary = s.str();
  return result;
}

std::vector<double> LogSpace(double lo, double hi, int points) {
  if (points < 1 || !(lo > 0.0) || !(hi >= lo)) {
    throw Error(ErrorCode::kInvalidSpec, "log grid needs points >= 1 and 0 < lo <= hi");
  }
  std::vector<double> out;
  if (points == 1) return {lo};
  const double a = std::log10(lo), b = std::log10(hi);
  for (int i = 0; i < points; ++i) out.push_back(std::pow(10.0, a + (b - a) * i / (points - 1)));
  out.back() = hi;
  out.front() = lo;
  return out;
}

LambdaSweepResult RunLambdaSweep(const Dataset& train, const Dataset& eval,
                                 const std::vector<double>& grid, const PipelineParams& params) {
  params.Validate();
  if (grid.empty()) throw Error(ErrorCode::kInvalidSpec, "empty lambda grid");
  if (train.empty() || eval.empty()) throw Error(ErrorCode::kEmptyDataset, "train and eval must be non-empty");
  RequireDisjoint(train, eval);

  const WhiteningModel whitening = FitWhitening(train, params.whiten);
  const EncoderParams enc = InitEncoder(params.dims, params.encoder.seed, params.encoder.sigma_a,
                                        params.encoder.sigma_b);
  const SufficientStats stats =
      Ingest(ApplyWhitening(train, whitening).images, enc, params.solver.mode, params.ingest_workers);
  std::vector<SpectralSample> held_out =
      LiftAll(ApplyWhitening(eval, whitening).images, enc, params.ingest_workers);
  for (SpectralSample& s : held_out) s.D.clear();  // only H and X are needed

  LambdaSweepResult result;
  result.table = MetricTable({"lambda", "recon_error"});
  for (double lambda : grid) {
    SolverConfig cfg = params.solver;
    cfg.lambda = lambda;
    const SolveResult solved = Solve(stats, params.dims, cfg);
    const double err = SpectralReconError(held_out, solved.filters);
    result.lambdas.push_back(lambda);
    result.errors.push_back(err);
    result.table.AddRow({lambda, err});
  }
  result.best_index = static_cast<std::size_t>(
      std::min_element(result.errors.begin(), result.errors.end()) - result.errors.begin());
  result.interior = result.best_index > 0 && result.best_index + 1 < result.errors.size();

  std::ostringstream s;
  s << "lambda sweep: " << grid.size() << " points, train=" << train.size() << " eval=" << eval.size()
    << " mode=" << StatsModeName(params.solver.mode) << " cycles=" << params.solver.cycles << "\n"
    << "  minimum recon_error=" << result.errors[result.best_index]
    << " at lambda=" << result.lambdas[result.best_index]
    << (result.interior ? " (interior)" : " (at grid end)") << "\n";
  result.summary = s.str();
  return result;
}

ConvergenceResult RunConvergenceCurve(const Dataset& stream, int checkpoint_every,
                                      const PipelineParams& params, int smoothing_window) {
  params.Validate();
  if (checkpoint_every < 1 || smoothing_window < 1) {
    throw Error(ErrorCode::kInvalidSpec, "checkpoint_every and smoothing_window must be >= 1");
  }
  if (stream.size() < 2 * static_cast<std::size_t>(checkpoint_every)) {
    throw Error(ErrorCode::kStreamTooShort, "stream of " + std::to_string(stream.size()) +
                                                " images is shorter than two checkpoints");
  }
  const WhiteningModel whitening = FitWhitening(stream, params.whiten);
  const Dataset white = ApplyWhitening(stream, whitening);
  const EncoderParams enc = InitEncoder(params.dims, params.encoder.seed, params.encoder.sigma_a,
                                        params.encoder.sigma_b);

  ConvergenceResult result;
  result.table = MetricTable({"n_seen", "avg_sq_diff", "smoothed"});
  SufficientStats stats = SufficientStats::Empty(params.dims, params.solver.mode);
  std::vector<RealPlane> previous(params.dims.filters, RealPlane(params.dims.image_dims()));
  const std::size_t checkpoints = stream.size() / checkpoint_every;
  for (std::size_t c = 0; c < checkpoints; ++c) {
    const std::span<const Image> batch(white.images.data() + c * checkpoint_every, checkpoint_every);
    stats = IngestInto(std::move(stats), batch, enc, params.ingest_workers);
    const std::vector<RealPlane> current = Solve(stats, params.dims, params.solver).filters.AllSpatial();
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 0; k < current.size(); ++k) {
      for (std::size_t i = 0; i < current[k].size(); ++i) {
        const double diff = current[k].values()[i] - previous[k].values()[i];
        sum += diff * diff;
      }
      count += current[k].size();
    }
    result.n_seen.push_back(stats.n_seen);
    result.avg_sq_diff.push_back(sum / static_cast<double>(count));
    previous = current;
  }
  for (std::size_t i = 0; i < result.avg_sq_diff.size(); ++i) {
    const std::size_t lo = i + 1 >= static_cast<std::size_t>(smoothing_window) ? i + 1 - smoothing_window : 0;
    double acc = 0.0;
    for (std::size_t j = lo; j <= i; ++j) acc += result.avg_sq_diff[j];
    result.smoothed.push_back(acc / static_cast<double>(i - lo + 1));
    result.table.AddRow({result.n_seen[i], result.avg_sq_diff[i], result.smoothed[i]});
  }
  result.peak = *std::max_element(result.avg_sq_diff.begin(), result.avg_sq_diff.end());
  result.final_value = result.avg_sq_diff.back();
  result.settle_ratio = result.peak > 0.0 ? result.final_value / result.peak : 0.0;

  std::ostringstream s;
  s << "convergence curve: " << checkpoints << " checkpoints every " << checkpoint_every
    << " images\n  peak avg_sq_diff=" << result.peak << " final=" << result.final_value
    << " settle ratio=" << result.settle_ratio << "\n";
  result.summary = s.str();
  return result;
}

}  // namespace rcae
