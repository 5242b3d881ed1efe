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

// Dense 2D planes, the 2D DFT, and the convolution primitives every other
// module is built on.
//
// DFT convention: the forward transform is unnormalized and the inverse
// carries the 1/(rows*cols) factor, so that for any real plane p
//
//   sum p^2 == (1 / (rows*cols)) * sum |Dft2(p)|^2.

#ifndef RCAE_SPECTRAL_H_
#define RCAE_SPECTRAL_H_

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "rcae/error.h"

namespace rcae {

using Complex = std::complex<double>;

struct PlaneDims {
  int rows = 0;
  int cols = 0;

  std::size_t size() const {
    return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  }
  friend bool operator==(const PlaneDims&, const PlaneDims&) = default;
};

// Row-major rows x cols grid. Dimensions are fixed at construction.
template <typename T>
class Plane {
 public:
  using value_type = T;

  Plane() = default;
  Plane(int rows, int cols, T fill = T{})
      : dims_{rows, cols}, data_(CheckedSize(rows, cols), fill) {}
  explicit Plane(PlaneDims dims, T fill = T{}) : Plane(dims.rows, dims.cols, fill) {}
  Plane(int rows, int cols, std::vector<T> data) : dims_{rows, cols}, data_(std::move(data)) {
    if (data_.size() != CheckedSize(rows, cols)) {
      throw Error(ErrorCode::kDimMismatch, "plane data size does not match dims");
    }
  }

  // Builds a plane from nested row lists; all rows must have equal length.
  static Plane FromRows(std::initializer_list<std::initializer_list<T>> rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r == 0 ? 0 : static_cast<int>(rows.begin()->size());
    std::vector<T> data;
    data.reserve(static_cast<std::size_t>(r) * c);
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != c) {
        throw Error(ErrorCode::kDimMismatch, "ragged row list");
      }
      data.insert(data.end(), row.begin(), row.end());
    }
    return Plane(r, c, std::move(data));
  }

  int rows() const { return dims_.rows; }
  int cols() const { return dims_.cols; }
  PlaneDims dims() const { return dims_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  T& operator()(int r, int c) { return data_[Index(r, c)]; }
  const T& operator()(int r, int c) const { return data_[Index(r, c)]; }

  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }
  std::span<T> values() { return data_; }
  std::span<const T> values() const { return data_; }
  std::span<T> row(int r) { return {data_.data() + Index(r, 0), static_cast<std::size_t>(dims_.cols)}; }
  std::span<const T> row(int r) const {
    return {data_.data() + Index(r, 0), static_cast<std::size_t>(dims_.cols)};
  }

  friend bool operator==(const Plane&, const Plane&) = default;

 private:
  static std::size_t CheckedSize(int rows, int cols) {
    if (rows < 0 || cols < 0) throw Error(ErrorCode::kInvalidDims, "negative plane dims");
    return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  }
  std::size_t Index(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(dims_.cols) +
           static_cast<std::size_t>(c);
  }

  PlaneDims dims_;
  std::vector<T> data_;
};

using RealPlane = Plane<double>;
using ComplexPlane = Plane<Complex>;

bool IsFinite(const RealPlane& p);
bool IsFinite(const ComplexPlane& p);

// Unnormalized forward 2D DFT. The result is exactly conjugate-symmetric:
// out(u, v) == conj(out(-u mod rows, -v mod cols)) bit for bit.
ComplexPlane Dft2(const RealPlane& plane);

// Inverse 2D DFT with 1/(rows*cols) scaling. Throws
// kNonNegligibleImaginaryPart when max |imag| exceeds
// 1e-9 * max(1, max |real|); smaller residue is dropped.
RealPlane Idft2(const ComplexPlane& plane);

// Inverse 2D DFT keeping the imaginary part.
ComplexPlane Idft2Complex(const ComplexPlane& plane);

// Copies `plane` into the top-left corner of a zero plane of `dims`.
RealPlane PadTo(const RealPlane& plane, PlaneDims dims);

// Top-left `dims` corner of `plane`.
RealPlane CropTo(const RealPlane& plane, PlaneDims dims);

ComplexPlane Hadamard(const ComplexPlane& a, const ComplexPlane& b);

// Entrywise num / (den + eps).
ComplexPlane HadamardDiv(const ComplexPlane& num, const ComplexPlane& den, double eps);

ComplexPlane Conj(const ComplexPlane& a);

// True convolution (kernel flipped) restricted to full-overlap positions.
// Output is (rows - krows + 1) x (cols - kcols + 1).
RealPlane ConvValid(const RealPlane& image, const RealPlane& kernel);

// Full linear convolution, output (rows + krows - 1) x (cols + kcols - 1).
RealPlane ConvFull(const RealPlane& map, const RealPlane& kernel);

// Matrix transpose (rows <-> cols).
RealPlane Transpose(const RealPlane& p);

// 180 degree rotation, p(r, c) -> p(rows-1-r, cols-1-c).
RealPlane Rotate180(const RealPlane& p);

double SquaredNorm(const RealPlane& p);
double SquaredNorm(const ComplexPlane& p);

}  // namespace rcae

#endif  // RCAE_SPECTRAL_H_
