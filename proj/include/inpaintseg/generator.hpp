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

#include <optional>
#include <random>
#include <vector>

#include "inpaintseg/layers.hpp"

namespace inpaintseg {

struct GeneratorSpec {
  int depth = 4;
  int base_channels = 32;
  int width = 64;
  int height = 64;

  /// Throws DimensionError/ValueError when the spec cannot be built.
  void validate() const;
  bool operator==(const GeneratorSpec&) const = default;
};

/// Skip-connected encoder-decoder mapping a masked slice (unit range, 1 channel)
/// to a full reconstruction in (0, 1).
///
/// Encoder: `depth` stride-2 4x4 convolutions doubling channels from
/// `base_channels`, instance norm on all but the first, leaky activation.
/// Decoder: nearest 2x upsample, concatenation with the encoder output at the
/// same resolution, 3x3 convolution, instance norm, leaky activation. The last
/// stage concatenates the input itself, then a 1x1 convolution and a sigmoid.
class Generator {
 public:
  /// Intermediate activations kept for the backward pass.
  struct Trace {
    Tensor input;
    Tensor stem_pre, stem_out;
    std::vector<Tensor> enc_in, enc_conv, enc_pre;  // pre = after norm, before activation
    std::vector<Tensor> enc_out;
    std::vector<Tensor> dec_in, dec_conv, dec_pre;
    Tensor head_in, head_pre, head_out, output;
  };

  explicit Generator(const GeneratorSpec& spec);
  Generator(const GeneratorSpec& spec, std::mt19937_64& rng);

  const GeneratorSpec& spec() const { return spec_; }

  Tensor forward(const Tensor& x) const;
  Tensor forward(const Tensor& x, Trace& trace) const;

  /// Accumulates parameter gradients from dL/doutput.
  void backward(const Trace& trace, const Tensor& doutput);

  std::vector<Param*> parameters();
  std::vector<const Param*> parameters() const;
  void zero_grad();

 private:
  struct EncoderBlock {
    Conv2d conv;
    std::optional<InstanceNorm2d> norm;
  };
  struct DecoderBlock {
    Conv2d conv;
    InstanceNorm2d norm;
  };

  void check_input(const Tensor& x) const;

  GeneratorSpec spec_;
  std::vector<EncoderBlock> encoder_;
  std::vector<DecoderBlock> decoder_;  // decoder_[i] produces the resolution of encoder_[i]'s output
  Conv2d stem_;  // full-resolution features for the head
  Conv2d head_;
  Conv2d out_;
};

}  // namespace inpaintseg
