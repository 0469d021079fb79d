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
#include <vector>

#include "inpaintseg/layers.hpp"

namespace inpaintseg {

struct DiscriminatorSpec {
  int depth = 4;
  int base_channels = 32;
  int spectral_norm_iters = 1;
  int width = 64;
  int height = 64;

  void validate() const;
  bool operator==(const DiscriminatorSpec&) const = default;
};

/// Convolution whose weight is divided by its spectral norm before use.
/// `u` and `v` are the persistent power-iteration estimates.
struct SpectralConv {
  Conv2d conv;
  std::vector<double> u;
  std::vector<double> v;

  int rows() const { return conv.geometry().out_c; }
  int cols() const { return conv.geometry().patch(); }
};

/// `depth` stride-2 spectrally normalized 4x4 convolutions with leaky activations,
/// global average pooling, a spectrally normalized linear layer and a sigmoid.
class Discriminator {
 public:
  struct Trace {
    std::vector<Tensor> conv_in, conv_out;
    Tensor pooled;
    Tensor logits;
    // Effective (normalized) weights and their sigmas as used by this pass.
    std::vector<std::vector<double>> weights;
    std::vector<double> sigmas;
  };

  explicit Discriminator(const DiscriminatorSpec& spec);
  Discriminator(const DiscriminatorSpec& spec, std::mt19937_64& rng);

  const DiscriminatorSpec& spec() const { return spec_; }

  /// Probabilities in (0, 1), one per batch entry.
  std::vector<double> forward(const Tensor& x) const;
  /// Logits (pre-sigmoid), one per batch entry.
  std::vector<double> forward_logits(const Tensor& x, Trace& trace) const;

  /// Backpropagates dL/dlogits. Parameter gradients are accumulated only when
  /// `accumulate_params`; returns dL/dx when `need_dx`.
  Tensor backward(const Trace& trace, const std::vector<double>& dlogits, bool accumulate_params,
                  bool need_dx);

  /// Runs `spectral_norm_iters` power-iteration steps on every layer, updating u and v.
  /// Called once per training forward pass; inference uses the stored estimates.
  void refresh_spectral_estimates();

  std::vector<Param*> parameters();
  std::vector<const Param*> parameters() const;
  std::vector<SpectralConv*> spectral_layers();
  std::vector<const SpectralConv*> spectral_layers() const;
  void zero_grad();

 private:
  DiscriminatorSpec spec_;
  std::vector<SpectralConv> convs_;
  SpectralConv linear_;
};

}  // namespace inpaintseg
