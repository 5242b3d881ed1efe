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

#include "rcae/spectral.h"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace rcae {
namespace {

enum class PlanKind { kRealForward, kComplexBackward };

// FFTW's planner is not thread-safe but executing a finished plan is, so
// plans are created once under a lock and reused with the new-array API.
// FFTW_UNALIGNED keeps the codelet choice independent of buffer alignment,
// which makes results bitwise reproducible across calls.
fftw_plan GetPlan(PlanKind kind, int rows, int cols) {
  static std::mutex mu;
  static std::map<std::tuple<PlanKind, int, int>, fftw_plan> plans;
  std::lock_guard<std::mutex> lock(mu);
  const auto key = std::make_tuple(kind, rows, cols);
  if (auto it = plans.find(key); it != plans.end()) return it->second;

  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  const std::size_t n = static_cast<std::size_t>(rows) * cols;
  fftw_plan plan = nullptr;
  if (kind == PlanKind::kRealForward) {
    std::vector<double> in(n);
    std::vector<Complex> out(static_cast<std::size_t>(rows) * (cols / 2 + 1));
    plan = fftw_plan_dft_r2c_2d(rows, cols, in.data(),
                                reinterpret_cast<fftw_complex*>(out.data()), flags);
  } else {
    std::vector<Complex> in(n), out(n);
    plan = fftw_plan_dft_2d(rows, cols, reinterpret_cast<fftw_complex*>(in.data()),
                            reinterpret_cast<fftw_complex*>(out.data()), FFTW_BACKWARD, flags);
  }
  if (plan == nullptr) throw Error(ErrorCode::kInvalidDims, "FFTW could not plan transform");
  plans.emplace(key, plan);
  return plan;
}

void RequireSameDims(PlaneDims a, PlaneDims b, const char* what) {
  if (!(a == b)) throw Error(ErrorCode::kDimMismatch, what);
}

}  // namespace

bool IsFinite(const RealPlane& p) {
  return std::all_of(p.values().begin(), p.values().end(),
                     [](double v) { return std::isfinite(v); });
}

bool IsFinite(const ComplexPlane& p) {
  return std::all_of(p.values().begin(), p.values().end(), [](const Complex& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

ComplexPlane Dft2(const RealPlane& plane) {
  const int rows = plane.rows();
  const int cols = plane.cols();
  ComplexPlane out(rows, cols);
  if (plane.empty()) return out;

  const int half_cols = cols / 2 + 1;
  std::vector<Complex> half(static_cast<std::size_t>(rows) * half_cols);
  // r2c with an out-of-place plan leaves the input untouched.
  fftw_execute_dft_r2c(GetPlan(PlanKind::kRealForward, rows, cols),
                       const_cast<double*>(plane.data()),
                       reinterpret_cast<fftw_complex*>(half.data()));

  for (int u = 0; u < rows; ++u) {
    for (int v = 0; v < half_cols; ++v) out(u, v) = half[static_cast<std::size_t>(u) * half_cols + v];
  }
  // Columns 0 and cols/2 (even cols) are their own mirror; force exact
  // symmetry within them as well as across the two halves.
  auto symmetrize_column = [&](int v) {
    for (int u = 0; u < rows; ++u) {
      const int mu = (rows - u) % rows;
      if (mu == u) {
        out(u, v) = Complex(out(u, v).real(), 0.0);
      } else if (u > mu) {
        out(u, v) = std::conj(out(mu, v));
      }
    }
  };
  symmetrize_column(0);
  if (cols % 2 == 0 && cols > 1) symmetrize_column(cols / 2);
  for (int u = 0; u < rows; ++u) {
    const int mu = (rows - u) % rows;
    for (int v = half_cols; v < cols; ++v) out(u, v) = std::conj(out(mu, cols - v));
  }
  return out;
}

ComplexPlane Idft2Complex(const ComplexPlane& plane) {
  const int rows = plane.rows();
  const int cols = plane.cols();
  ComplexPlane out(rows, cols);
  if (plane.empty()) return out;
  fftw_execute_dft(GetPlan(PlanKind::kComplexBackward, rows, cols),
                   reinterpret_cast<fftw_complex*>(const_cast<Complex*>(plane.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
  const double scale = 1.0 / static_cast<double>(plane.size());
  for (Complex& z : out.values()) z *= scale;
  return out;
}

RealPlane Idft2(const ComplexPlane& plane) {
  const ComplexPlane full = Idft2Complex(plane);
  RealPlane out(plane.rows(), plane.cols());
  double max_real = 0.0;
  double max_imag = 0.0;
  for (std::size_t i = 0; i < full.size(); ++i) {
    const Complex z = full.values()[i];
    out.values()[i] = z.real();
    max_real = std::max(max_real, std::abs(z.real()));
    max_imag = std::max(max_imag, std::abs(z.imag()));
  }
  if (max_imag > 1e-9 * std::max(1.0, max_real)) {
    throw Error(ErrorCode::kNonNegligibleImaginaryPart,
                "inverse DFT has imaginary residue " + std::to_string(max_imag));
  }
  return out;
}

RealPlane PadTo(const RealPlane& plane, PlaneDims dims) {
  if (dims.rows < plane.rows() || dims.cols < plane.cols()) {
    throw Error(ErrorCode::kTargetTooSmall, "pad target smaller than source");
  }
  RealPlane out(dims);
  for (int r = 0; r < plane.rows(); ++r) {
    std::copy(plane.row(r).begin(), plane.row(r).end(), out.row(r).begin());
  }
  return out;
}

RealPlane CropTo(const RealPlane& plane, PlaneDims dims) {
  if (dims.rows > plane.rows() || dims.cols > plane.cols() || dims.rows < 0 || dims.cols < 0) {
    throw Error(ErrorCode::kInvalidDims, "crop larger than source");
  }
  RealPlane out(dims);
  for (int r = 0; r < dims.rows; ++r) {
    auto src = plane.row(r);
    std::copy(src.begin(), src.begin() + dims.cols, out.row(r).begin());
  }
  return out;
}

ComplexPlane Hadamard(const ComplexPlane& a, const ComplexPlane& b) {
  RequireSameDims(a.dims(), b.dims(), "hadamard operands differ in dims");
  ComplexPlane out(a.dims());
  for (std::size_t i = 0; i < a.size(); ++i) out.values()[i] = a.values()[i] * b.values()[i];
  return out;
}

ComplexPlane HadamardDiv(const ComplexPlane& num, const ComplexPlane& den, double eps) {
  RequireSameDims(num.dims(), den.dims(), "hadamard_div operands differ in dims");
  if (!(eps >= 0.0)) throw Error(ErrorCode::kInvalidSpec, "eps must be non-negative");
  ComplexPlane out(num.dims());
  for (std::size_t i = 0; i < num.size(); ++i) {
    const Complex d = den.values()[i] + eps;
    if (d == Complex(0.0, 0.0)) {
      throw Error(ErrorCode::kDivisionByZero, "zero denominator with eps = 0");
    }
    out.values()[i] = num.values()[i] / d;
  }
  return out;
}

ComplexPlane Conj(const ComplexPlane& a) {
  ComplexPlane out(a.dims());
  for (std::size_t i = 0; i < a.size(); ++i) out.values()[i] = std::conj(a.values()[i]);
  return out;
}

RealPlane ConvValid(const RealPlane& image, const RealPlane& kernel) {
  const int kr = kernel.rows();
  const int kc = kernel.cols();
  if (kr > image.rows() || kc > image.cols() || kr < 1 || kc < 1) {
    throw Error(ErrorCode::kKernelTooLarge, "kernel does not fit inside image");
  }
  const int out_rows = image.rows() - kr + 1;
  const int out_cols = image.cols() - kc + 1;
  RealPlane out(out_rows, out_cols);
  // out(i, j) = sum_{p,q} image(i + kr-1-p, j + kc-1-q) * kernel(p, q)
  for (int p = 0; p < kr; ++p) {
    for (int q = 0; q < kc; ++q) {
      const double k = kernel(p, q);
      const int dr = kr - 1 - p;
      const int dc = kc - 1 - q;
      for (int i = 0; i < out_rows; ++i) {
        const double* src = image.row(i + dr).data() + dc;
        double* dst = out.row(i).data();
        for (int j = 0; j < out_cols; ++j) dst[j] += k * src[j];
      }
    }
  }
  return out;
}

RealPlane ConvFull(const RealPlane& map, const RealPlane& kernel) {
  const int out_rows = map.rows() + kernel.rows() - 1;
  const int out_cols = map.cols() + kernel.cols() - 1;
  if (map.empty() || kernel.empty()) return RealPlane(std::max(out_rows, 0), std::max(out_cols, 0));
  RealPlane out(out_rows, out_cols);
  for (int p = 0; p < kernel.rows(); ++p) {
    for (int q = 0; q < kernel.cols(); ++q) {
      const double k = kernel(p, q);
      for (int i = 0; i < map.rows(); ++i) {
        const double* src = map.row(i).data();
        double* dst = out.row(i + p).data() + q;
        for (int j = 0; j < map.cols(); ++j) dst[j] += k * src[j];
      }
    }
  }
  return out;
}

RealPlane Transpose(const RealPlane& p) {
  RealPlane out(p.cols(), p.rows());
  for (int r = 0; r < p.rows(); ++r) {
    for (int c = 0; c < p.cols(); ++c) out(c, r) = p(r, c);
  }
  return out;
}

RealPlane Rotate180(const RealPlane& p) {
  RealPlane out(p.dims());
  for (int r = 0; r < p.rows(); ++r) {
    for (int c = 0; c < p.cols(); ++c) out(p.rows() - 1 - r, p.cols() - 1 - c) = p(r, c);
  }
  return out;
}

double SquaredNorm(const RealPlane& p) {
  double s = 0.0;
  for (double v : p.values()) s += v * v;
  return s;
}

double SquaredNorm(const ComplexPlane& p) {
  double s = 0.0;
  for (const Complex& z : p.values()) s += std::norm(z);
  return s;
}

}  // namespace rcae
