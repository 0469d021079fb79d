// Copyright 2026 The inpaintseg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <span>

#include "inpaintseg/tensor.hpp"

namespace inpaintseg {

/// Shape of a 2D convolution with square kernel, stride and zero padding.
struct ConvGeometry {
  int in_c = 1;
  int out_c = 1;
  int kernel = 3;
  int stride = 1;
  int pad = 1;

  int out_h(int in_h) const { return (in_h + 2 * pad - kernel) / stride + 1; }
  int out_w(int in_w) const { return (in_w + 2 * pad - kernel) / stride + 1; }
  int patch() const { return in_c * kernel * kernel; }
  std::size_t weight_size() const { return static_cast<std::size_t>(out_c) * patch(); }
};

// OpenMP-parallel kernels. Work is split over batch samples; every reduction across
// samples runs in sample order, so results do not depend on the thread count.
namespace kernels {

/// C[M x N] += A[M x K] * B[K x N], all row-major with explicit leading dimensions.
void gemm_acc(int M, int N, int K, const double* A, int lda, const double* B, int ldb, double* C,
              int ldc);

void im2col(const double* x, int c, int h, int w, const ConvGeometry& g, double* col);
void col2im_acc(const double* col, int c, int h, int w, const ConvGeometry& g, double* x);

/// y = conv(x, weight) + bias; `weight` is out_c x (in_c * k * k).
Tensor conv2d_forward(const Tensor& x, std::span<const double> weight, std::span<const double> bias,
                      const ConvGeometry& g);

/// Accumulates dL/dweight and dL/dbias; writes dL/dx when `dx` is non-null.
void conv2d_backward(const Tensor& x, std::span<const double> weight, const Tensor& dy,
                     const ConvGeometry& g, std::span<double> dweight, std::span<double> dbias,
                     Tensor* dx);

}  // namespace kernels

// Serial direct-loop implementations used as test oracles and benchmark baselines.
namespace reference {

Tensor conv2d_forward(const Tensor& x, std::span<const double> weight, std::span<const double> bias,
                      const ConvGeometry& g);
void conv2d_backward(const Tensor& x, std::span<const double> weight, const Tensor& dy,
                     const ConvGeometry& g, std::span<double> dweight, std::span<double> dbias,
                     Tensor* dx);

}  // namespace reference

}  // namespace inpaintseg
