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

// Coordinate descent over decoder filters, solved independently per
// frequency bin.
//
// For a bin, with per-sample spectra H_n^(k), D_n^(k), X_n, coordinate k
// is set to the exact minimizer with all other filters fixed:
//
//   W_k = [ sum_n conj(H_nk) (X_n - sum_{i!=k} W_i H_ni)
//           - lambda sum_n conj(D_nk) sum_{i!=k} W_i D_ni ]
//         / [ sum_n |H_nk|^2 + lambda sum_n |D_nk|^2 + eps_div ]
//
// Literal mode applies the same rule to a single pseudo-sample made of the
// summed statistics (H_N, D_N, X_N), which is the products-of-sums update.
// The two coincide when N = 1.

#ifndef RCAE_SOLVER_H_
#define RCAE_SOLVER_H_

#include <cstdint>
#include <vector>

#include "rcae/model.h"
#include "rcae/stats.h"

namespace rcae {

enum class BinPartition {
  kRowBlocks,   // contiguous blocks of grid rows, one per worker
  kRoundRobin,  // row r goes to worker r % workers
};

struct SolverConfig {
  double lambda = 1.0;
  int cycles = 10;
  double eps_div = 1e-12;
  StatsMode mode = StatsMode::kExact;
  // Per-bin early stop once max_k |delta W_k|^2 <= tol_stop. 0 disables.
  double tol_stop = 0.0;
  // 0 selects std::thread::hardware_concurrency().
  int workers = 1;
  BinPartition partition = BinPartition::kRowBlocks;
  // Solve only the rows u <= rows/2 and fill the rest by conjugate mirroring.
  bool use_conjugate_symmetry = true;

  void Validate() const;
};

struct SolveReport {
  StatsMode mode = StatsMode::kExact;
  int cycles_run = 0;
  int workers = 1;
  std::int64_t bins_solved = 0;
  // Squared change of spectral filter entries, one value per cycle run.
  std::vector<double> max_sq_change;
  std::vector<double> mean_sq_change;
  double setup_ms = 0.0;
  double solve_ms = 0.0;
  double mirror_ms = 0.0;
  double total_ms = 0.0;
};

struct SolveResult {
  DecoderFilters filters;
  SolveReport report;
};

// New W^(k) by the products-of-sums update, computed plane-wise from the
// summed statistics. Works for either stats mode.
ComplexPlane CdUpdateLiteral(const SufficientStats& stats, const DecoderFilters& dec, int k,
                             const SolverConfig& cfg);

// New W^(k) by the exact coordinate minimizer over retained samples.
// Requires exact-mode stats.
ComplexPlane CdUpdateExact(const SufficientStats& stats, const DecoderFilters& dec, int k,
                           const SolverConfig& cfg);

// Starts from zero filters and runs cfg.cycles sweeps over k = 0..K-1.
// Output is bitwise identical for any worker count and partition.
SolveResult Solve(const SufficientStats& stats, const ModelDims& dims, const SolverConfig& cfg);

}  // namespace rcae

#endif  // RCAE_SOLVER_H_
