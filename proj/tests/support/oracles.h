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

// Test-only reference implementations. These are deliberately naive (direct
// sums, explicit loops, dense solves) and share no code with the library.

#ifndef RCAE_TESTS_SUPPORT_ORACLES_H_
#define RCAE_TESTS_SUPPORT_ORACLES_H_

#include <cstdint>
#include <random>
#include <vector>

#include "rcae/model.h"
#include "rcae/spectral.h"
#include "rcae/stats.h"

namespace rcae::testing {

// O(n^2) per output entry.
ComplexPlane DirectDft2(const RealPlane& p);
ComplexPlane DirectDft2(const ComplexPlane& p);
// Includes the 1/(rows*cols) factor.
ComplexPlane DirectIdft2(const ComplexPlane& p);

RealPlane LoopConvValid(const RealPlane& image, const RealPlane& kernel);
RealPlane LoopConvFull(const RealPlane& map, const RealPlane& kernel);

// tanh(sum_c conv_valid(x_c, a_k) + b_k) and 1 - tanh^2, by loops.
void LoopEncode(const Image& x, const EncoderParams& enc, std::vector<RealPlane>& maps,
                std::vector<RealPlane>& derivmaps);

// Spectra of one image built from the loop encoder and the direct DFT.
SpectralSample DirectLift(const Image& x, const EncoderParams& enc);

// Per-bin dense solve of (G + eps I) w = b, where
//   G_ij = sum_n conj(H_ni) H_nj + lambda conj(D_ni) D_nj,  b_i = sum_n conj(H_ni) X_n.
// This is the stationary point of the exact-mode coordinate updates.
std::vector<ComplexPlane> RidgeOracle(const std::vector<SpectralSample>& samples, double lambda,
                                      double eps);

// Cyclic Gauss-Seidel on the same per-bin normal equations, starting from
// zero, `sweeps` passes over k = 0..K-1.
std::vector<ComplexPlane> GaussSeidelOracle(const std::vector<SpectralSample>& samples, double lambda,
                                            double eps, int sweeps);

// Objective of the exact mode evaluated by direct per-sample sums:
//   sum_n ||sum_k W_k H_nk - X_n||^2 + lambda ||sum_k W_k D_nk||^2
double DirectObjective(const std::vector<SpectralSample>& samples, const std::vector<ComplexPlane>& W,
                       double lambda);

double MaxAbsDiff(const RealPlane& a, const RealPlane& b);
double MaxAbsDiff(const ComplexPlane& a, const ComplexPlane& b);
double MaxAbs(const RealPlane& a);
double MaxAbs(const ComplexPlane& a);
// ||a - b|| / max(||b||, tiny).
double RelativeError(const ComplexPlane& a, const ComplexPlane& b);
double RelativeError(const RealPlane& a, const RealPlane& b);

// Hand-rolled generators.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  int Int(int lo, int hi);  // inclusive
  double Uniform(double lo, double hi);
  double Normal(double sd = 1.0);
  RealPlane Plane(int rows, int cols, double sd = 1.0);
  ComplexPlane Spectrum(int rows, int cols, double sd = 1.0);
  Image MakeImage(int d, int channels, double sd = 1.0);
  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace rcae::testing

#endif  // RCAE_TESTS_SUPPORT_ORACLES_H_
