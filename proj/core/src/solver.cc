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

#include "rcae/solver.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

namespace rcae {
namespace {

using Clock = std::chrono::steady_clock;

double MsSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Plain complex arithmetic on (re, im) pairs. std::complex operator* goes
// through the Annex G slow path (__muldc3) without -ffast-math.
struct Cx {
  double re;
  double im;
};
inline Cx Load(const Complex& z) { return {z.real(), z.imag()}; }
inline Cx Mul(Cx a, Cx b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
// conj(a) * b
inline Cx ConjMul(Cx a, Cx b) { return {a.re * b.re + a.im * b.im, a.re * b.im - a.im * b.re}; }
inline double Norm(Cx a) { return a.re * a.re + a.im * a.im; }

void CheckFilterIndex(const SufficientStats& stats, const DecoderFilters& dec, int k) {
  if (k < 0 || k >= stats.dims.filters) {
    throw Error(ErrorCode::kDimMismatch, "filter index " + std::to_string(k) + " out of range");
  }
  if (dec.num_filters() != stats.dims.filters || !(dec.grid() == stats.dims.image_dims())) {
    throw Error(ErrorCode::kDimMismatch, "decoder filters do not match stats dims");
  }
}

// Pointers to the planes a solve reads; the literal mode view holds one
// pseudo-sample built from the summed planes.
struct StatsView {
  int num_samples = 0;
  int num_filters = 0;
  int cols = 0;
  std::vector<const Complex*> H;  // [n * K + k]
  std::vector<const Complex*> D;  // [n * K + k]
  std::vector<const Complex*> X;  // [n]
};

StatsView MakeView(const SufficientStats& stats, StatsMode mode) {
  StatsView view;
  view.num_filters = stats.dims.filters;
  view.cols = stats.dims.image_size;
  const std::size_t K = static_cast<std::size_t>(stats.dims.filters);
  if (mode == StatsMode::kLiteral) {
    view.num_samples = 1;
    for (std::size_t k = 0; k < K; ++k) {
      view.H.push_back(stats.H_sum[k].data());
      view.D.push_back(stats.D_sum[k].data());
    }
    view.X.push_back(stats.X_sum.data());
    return view;
  }
  view.num_samples = static_cast<int>(stats.samples.size());
  for (const auto& s : stats.samples) {
    for (std::size_t k = 0; k < K; ++k) {
      view.H.push_back(s->H[k].data());
      view.D.push_back(s->D[k].data());
    }
    view.X.push_back(s->X.data());
  }
  return view;
}

struct CycleStat {
  double sum = 0.0;
  double max = 0.0;
};

// Solves every bin of grid row `u`, writing W^(k)(u, .) into `out`.
// Reads only row `u` of the statistics.
class RowSolver {
 public:
  RowSolver(const StatsView& view, const SolverConfig& cfg)
      : view_(view),
        cfg_(cfg),
        K_(view.num_filters),
        N_(view.num_samples),
        C_(view.cols),
        w_(static_cast<std::size_t>(K_) * C_),
        den_(static_cast<std::size_t>(K_) * C_),
        r_(static_cast<std::size_t>(N_) * C_),
        s_(static_cast<std::size_t>(N_) * C_),
        num_h_(C_),
        num_d_(C_),
        delta_(static_cast<std::size_t>(K_) * C_),
        active_(C_) {}

  // Returns per-cycle change statistics for this row.
  std::vector<CycleStat> SolveRow(int u, std::vector<ComplexPlane>& out) {
    const std::size_t row_offset = static_cast<std::size_t>(u) * C_;
    const double lambda = cfg_.lambda;
    const double eps = cfg_.eps_div;

    std::fill(w_.begin(), w_.end(), Cx{0.0, 0.0});
    std::fill(s_.begin(), s_.end(), Cx{0.0, 0.0});
    std::fill(active_.begin(), active_.end(), 1);
    for (int n = 0; n < N_; ++n) {
      const Complex* x = view_.X[n] + row_offset;
      Cx* r = &r_[static_cast<std::size_t>(n) * C_];
      for (int v = 0; v < C_; ++v) r[v] = Load(x[v]);
    }
    // Denominators, summed in ascending sample order.
    for (int k = 0; k < K_; ++k) {
      double* den = &den_[static_cast<std::size_t>(k) * C_];
      std::vector<double> dsum(C_, 0.0);
      std::fill(den, den + C_, 0.0);
      for (int n = 0; n < N_; ++n) {
        const Complex* h = H(n, k) + row_offset;
        const Complex* d = D(n, k) + row_offset;
        for (int v = 0; v < C_; ++v) {
          den[v] += Norm(Load(h[v]));
          dsum[v] += Norm(Load(d[v]));
        }
      }
      for (int v = 0; v < C_; ++v) {
        den[v] = den[v] + lambda * dsum[v] + eps;
        if (den[v] == 0.0) {
          throw Error(ErrorCode::kDivisionByZero,
                      "bin (" + std::to_string(u) + ", " + std::to_string(v) +
                          ") has zero denominator; set eps_div > 0 or lambda > 0");
        }
      }
    }

    std::vector<CycleStat> stats;
    for (int cycle = 0; cycle < cfg_.cycles; ++cycle) {
      if (std::none_of(active_.begin(), active_.end(), [](char a) { return a != 0; })) break;
      CycleStat cs;
      for (int k = 0; k < K_; ++k) {
        Cx* w = &w_[static_cast<std::size_t>(k) * C_];
        const double* den = &den_[static_cast<std::size_t>(k) * C_];
        Cx* delta = &delta_[static_cast<std::size_t>(k) * C_];
        std::fill(num_h_.begin(), num_h_.end(), Cx{0.0, 0.0});
        std::fill(num_d_.begin(), num_d_.end(), Cx{0.0, 0.0});
        for (int n = 0; n < N_; ++n) {
          const Complex* h = H(n, k) + row_offset;
          const Complex* d = D(n, k) + row_offset;
          const Cx* r = &r_[static_cast<std::size_t>(n) * C_];
          const Cx* s = &s_[static_cast<std::size_t>(n) * C_];
          for (int v = 0; v < C_; ++v) {
            const Cx hv = Load(h[v]);
            const Cx dv = Load(d[v]);
            // X_n - sum_{i!=k} W_i H_ni  and  sum_{i!=k} W_i D_ni
            const Cx wh = Mul(w[v], hv);
            const Cx wd = Mul(w[v], dv);
            const Cx p{r[v].re + wh.re, r[v].im + wh.im};
            const Cx q{s[v].re - wd.re, s[v].im - wd.im};
            const Cx a = ConjMul(hv, p);
            const Cx b = ConjMul(dv, q);
            num_h_[v].re += a.re;
            num_h_[v].im += a.im;
            num_d_[v].re += b.re;
            num_d_[v].im += b.im;
          }
        }
        for (int v = 0; v < C_; ++v) {
          if (!active_[v]) {
            delta[v] = {0.0, 0.0};
            continue;
          }
          const Cx updated{(num_h_[v].re - lambda * num_d_[v].re) / den[v],
                           (num_h_[v].im - lambda * num_d_[v].im) / den[v]};
          delta[v] = {updated.re - w[v].re, updated.im - w[v].im};
          w[v] = updated;
          const double change = Norm(delta[v]);
          cs.sum += change;
          cs.max = std::max(cs.max, change);
        }
        for (int n = 0; n < N_; ++n) {
          const Complex* h = H(n, k) + row_offset;
          const Complex* d = D(n, k) + row_offset;
          Cx* r = &r_[static_cast<std::size_t>(n) * C_];
          Cx* s = &s_[static_cast<std::size_t>(n) * C_];
          for (int v = 0; v < C_; ++v) {
            const Cx dh = Mul(delta[v], Load(h[v]));
            const Cx dd = Mul(delta[v], Load(d[v]));
            r[v].re -= dh.re;
            r[v].im -= dh.im;
            s[v].re += dd.re;
            s[v].im += dd.im;
          }
        }
      }
      stats.push_back(cs);
      if (cfg_.tol_stop > 0.0) {
        for (int v = 0; v < C_; ++v) {
          if (!active_[v]) continue;
          double worst = 0.0;
          for (int k = 0; k < K_; ++k) {
            worst = std::max(worst, Norm(delta_[static_cast<std::size_t>(k) * C_ + v]));
          }
          if (worst <= cfg_.tol_stop) active_[v] = 0;
        }
      }
    }

    for (int k = 0; k < K_; ++k) {
      Complex* dst = out[k].data() + row_offset;
      const Cx* w = &w_[static_cast<std::size_t>(k) * C_];
      for (int v = 0; v < C_; ++v) dst[v] = Complex(w[v].re, w[v].im);
    }
    return stats;
  }

 private:
  const Complex* H(int n, int k) const { return view_.H[static_cast<std::size_t>(n) * K_ + k]; }
  const Complex* D(int n, int k) const { return view_.D[static_cast<std::size_t>(n) * K_ + k]; }

  const StatsView& view_;
  const SolverConfig& cfg_;
  int K_;
  int N_;
  int C_;
  std::vector<Cx> w_;
  std::vector<double> den_;
  std::vector<Cx> r_;  // X_n - sum_i W_i H_ni
  std::vector<Cx> s_;  // sum_i W_i D_ni
  std::vector<Cx> num_h_;
  std::vector<Cx> num_d_;
  std::vector<Cx> delta_;
  std::vector<char> active_;
};

std::vector<std::vector<int>> PartitionRows(int rows, int workers, BinPartition partition) {
  std::vector<std::vector<int>> parts(workers);
  for (int r = 0; r < rows; ++r) {
    const int owner = partition == BinPartition::kRoundRobin
                          ? r % workers
                          : static_cast<int>(static_cast<long long>(r) * workers / rows);
    parts[owner].push_back(r);
  }
  return parts;
}

}  // namespace

void SolverConfig::Validate() const {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::kInvalidConfig, "lambda must be finite and >= 0");
  }
  if (cycles < 1) throw Error(ErrorCode::kInvalidConfig, "cycles must be >= 1");
  if (!(eps_div >= 0.0)) throw Error(ErrorCode::kInvalidConfig, "eps_div must be >= 0");
  if (!(tol_stop >= 0.0)) throw Error(ErrorCode::kInvalidConfig, "tol_stop must be >= 0");
  if (workers < 0) throw Error(ErrorCode::kInvalidConfig, "workers must be >= 0");
}

ComplexPlane CdUpdateLiteral(const SufficientStats& stats, const DecoderFilters& dec, int k,
                             const SolverConfig& cfg) {
  CheckFilterIndex(stats, dec, k);
  const ComplexPlane Hk_conj = Conj(stats.H_sum[k]);
  const ComplexPlane Dk_conj = Conj(stats.D_sum[k]);

  ComplexPlane num = Hadamard(Hk_conj, stats.X_sum);
  for (int i = 0; i < stats.dims.filters; ++i) {
    if (i == k) continue;
    const ComplexPlane hh = Hadamard(stats.H_sum[i], Hk_conj);
    const ComplexPlane dd = Hadamard(stats.D_sum[i], Dk_conj);
    const ComplexPlane& Wi = dec.spectral(i);
    for (std::size_t b = 0; b < num.size(); ++b) {
      num.values()[b] -= Wi.values()[b] * (hh.values()[b] + cfg.lambda * dd.values()[b]);
    }
  }
  ComplexPlane den = Hadamard(stats.H_sum[k], Hk_conj);
  const ComplexPlane dd = Hadamard(stats.D_sum[k], Dk_conj);
  for (std::size_t b = 0; b < den.size(); ++b) den.values()[b] += cfg.lambda * dd.values()[b];
  return HadamardDiv(num, den, cfg.eps_div);
}

ComplexPlane CdUpdateExact(const SufficientStats& stats, const DecoderFilters& dec, int k,
                           const SolverConfig& cfg) {
  CheckFilterIndex(stats, dec, k);
  if (stats.mode != StatsMode::kExact) {
    throw Error(ErrorCode::kModeMismatch, "exact update needs exact-mode stats");
  }
  const PlaneDims grid = stats.dims.image_dims();
  const int K = stats.dims.filters;
  ComplexPlane data_term(grid);
  ComplexPlane penalty_term(grid);
  ComplexPlane den_h(grid);
  ComplexPlane den_d(grid);
  for (const auto& s : stats.samples) {
    for (std::size_t b = 0; b < grid.size(); ++b) {
      Complex fit = s->X.values()[b];
      Complex contraction(0.0, 0.0);
      for (int i = 0; i < K; ++i) {
        if (i == k) continue;
        const Complex wi = dec.spectral(i).values()[b];
        fit -= wi * s->H[i].values()[b];
        contraction += wi * s->D[i].values()[b];
      }
      const Complex hk = s->H[k].values()[b];
      const Complex dk = s->D[k].values()[b];
      data_term.values()[b] += std::conj(hk) * fit;
      penalty_term.values()[b] += std::conj(dk) * contraction;
      den_h.values()[b] += hk * std::conj(hk);
      den_d.values()[b] += dk * std::conj(dk);
    }
  }
  ComplexPlane num(grid);
  ComplexPlane den(grid);
  for (std::size_t b = 0; b < grid.size(); ++b) {
    num.values()[b] = data_term.values()[b] - cfg.lambda * penalty_term.values()[b];
    den.values()[b] = den_h.values()[b] + cfg.lambda * den_d.values()[b];
  }
  return HadamardDiv(num, den, cfg.eps_div);
}

SolveResult Solve(const SufficientStats& stats, const ModelDims& dims, const SolverConfig& cfg) {
  const auto start = Clock::now();
  cfg.Validate();
  dims.Validate();
  if (stats.n_seen < 1) throw Error(ErrorCode::kEmptyStats, "no samples absorbed");
  if (!(stats.dims == dims)) throw Error(ErrorCode::kDimMismatch, "stats were built for other dims");
  if (cfg.mode == StatsMode::kExact && stats.mode != StatsMode::kExact) {
    throw Error(ErrorCode::kModeMismatch, "exact solve needs exact-mode stats");
  }

  const int rows = dims.image_size;
  const int cols = dims.image_size;
  const int solved_rows = cfg.use_conjugate_symmetry ? rows / 2 + 1 : rows;
  int workers = cfg.workers == 0 ? static_cast<int>(std::thread::hardware_concurrency()) : cfg.workers;
  workers = std::clamp(workers, 1, solved_rows);

  const StatsView view = MakeView(stats, cfg.mode);
  std::vector<ComplexPlane> out(dims.filters, ComplexPlane(dims.image_dims()));
  const auto parts = PartitionRows(solved_rows, workers, cfg.partition);
  std::vector<std::vector<CycleStat>> row_stats(solved_rows);
  std::vector<std::exception_ptr> errors(workers);

  SolveResult result;
  result.report.setup_ms = MsSince(start);
  const auto solve_start = Clock::now();

  auto run_part = [&](int p) {
    try {
      RowSolver solver(view, cfg);
      for (int u : parts[p]) row_stats[u] = solver.SolveRow(u, out);
    } catch (...) {
      errors[p] = std::current_exception();
    }
  };
  {
    std::vector<std::jthread> threads;
    for (int p = 1; p < workers; ++p) threads.emplace_back(run_part, p);
    run_part(0);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  result.report.solve_ms = MsSince(solve_start);

  const auto mirror_start = Clock::now();
  if (cfg.use_conjugate_symmetry) {
    for (ComplexPlane& W : out) {
      for (int u = solved_rows; u < rows; ++u) {
        const int mu = rows - u;
        for (int v = 0; v < cols; ++v) W(u, v) = std::conj(W(mu, (cols - v) % cols));
      }
    }
  }
  result.report.mirror_ms = MsSince(mirror_start);

  // Combine per-row change statistics in row order.
  SolveReport& report = result.report;
  report.mode = cfg.mode;
  report.workers = workers;
  report.bins_solved = static_cast<std::int64_t>(solved_rows) * cols;
  for (const auto& rs : row_stats) {
    report.cycles_run = std::max(report.cycles_run, static_cast<int>(rs.size()));
  }
  report.max_sq_change.assign(report.cycles_run, 0.0);
  std::vector<double> sums(report.cycles_run, 0.0);
  for (const auto& rs : row_stats) {
    for (std::size_t c = 0; c < rs.size(); ++c) {
      sums[c] += rs[c].sum;
      report.max_sq_change[c] = std::max(report.max_sq_change[c], rs[c].max);
    }
  }
  const double entries = static_cast<double>(report.bins_solved) * dims.filters;
  for (double s : sums) report.mean_sq_change.push_back(s / entries);

  result.filters = DecoderFilters(std::move(out));
  report.total_ms = MsSince(start);
  return result;
}

}  // namespace rcae
