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

#include <random>
#include <span>
#include <utility>
#include <vector>

#include "inpaintseg/kernels.hpp"
#include "inpaintseg/tensor.hpp"

namespace inpaintseg {

/// Trainable array with its gradient accumulator.
struct Param {
  std::vector<double> value;
  std::vector<double> grad;

  Param() = default;
  explicit Param(std::size_t n, double fill = 0.0) : value(n, fill), grad(n, 0.0) {}
  std::size_t size() const { return value.size(); }
  void zero_grad() { std::fill(grad.begin(), grad.end(), 0.0); }
};

class Conv2d {
 public:
  Conv2d() = default;
  Conv2d(int in_c, int out_c, int kernel, int stride, int pad);

  /// Kaiming-uniform weights scaled for a leaky activation of slope `slope`; zero bias.
  void init(std::mt19937_64& rng, double slope);

  const ConvGeometry& geometry() const { return geom_; }

  Tensor forward(const Tensor& x) const;
  Tensor forward_with(const Tensor& x, std::span<const double> weight) const;

  /// Accumulates parameter gradients; returns dL/dx when `need_dx`.
  Tensor backward(const Tensor& x, const Tensor& dy, bool need_dx);
  /// Same, with an externally supplied effective weight and weight-gradient sink.
  Tensor backward_with(const Tensor& x, const Tensor& dy, std::span<const double> weight,
                       std::span<double> dweight, bool need_dx);

  Param weight;
  Param bias;

 private:
  ConvGeometry geom_;
};

/// Per-sample, per-channel normalization with learned affine parameters.
class InstanceNorm2d {
 public:
  InstanceNorm2d() = default;
  explicit InstanceNorm2d(int channels, double eps = 1e-5);

  Tensor forward(const Tensor& x) const;
  Tensor backward(const Tensor& x, const Tensor& dy);

  Param gamma;
  Param beta;

 private:
  double eps_ = 1e-5;
};

inline constexpr double kLeakySlope = 0.2;

Tensor leaky_relu(const Tensor& x, double slope = kLeakySlope);
Tensor leaky_relu_backward(const Tensor& x, const Tensor& dy, double slope = kLeakySlope);

Tensor sigmoid(const Tensor& x);
/// Uses the forward output `y`.
Tensor sigmoid_backward(const Tensor& y, const Tensor& dy);

Tensor upsample2x(const Tensor& x);
Tensor upsample2x_backward(const Tensor& dy);

Tensor concat_channels(const Tensor& a, const Tensor& b);
/// Splits a gradient over concat_channels(a, b) back into (da, db).
std::pair<Tensor, Tensor> split_channels(const Tensor& d, int channels_a);

Tensor global_avg_pool(const Tensor& x);
Tensor global_avg_pool_backward(const Tensor& dy, int h, int w);

void add_inplace(Tensor& dst, const Tensor& src);

}  // namespace inpaintseg
