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

#include "inpaintseg/generator.hpp"

#include <string>

#include "inpaintseg/errors.hpp"

namespace inpaintseg {

void GeneratorSpec::validate() const {
  if (depth < 1) throw ValueError("generator depth must be >= 1");
  if (base_channels < 1) throw ValueError("generator base_channels must be >= 1");
  const int unit = 1 << depth;
  if (width < 1 || height < 1 || width % unit != 0 || height % unit != 0) {
    throw DimensionError("generator input " + std::to_string(width) + "x" + std::to_string(height) +
                         " is not divisible by 2^depth = " + std::to_string(unit));
  }
}

namespace {
int channels_at(const GeneratorSpec& s, int level) { return s.base_channels << level; }
}  // namespace

Generator::Generator(const GeneratorSpec& spec) : spec_(spec) {
  spec_.validate();
  int in_c = 1;
  for (int i = 0; i < spec_.depth; ++i) {
    const int out_c = channels_at(spec_, i);
    EncoderBlock b{Conv2d(in_c, out_c, 4, 2, 1), std::nullopt};
    if (i > 0) b.norm.emplace(out_c);
    encoder_.push_back(std::move(b));
    in_c = out_c;
  }
  // decoder_[i] for i in [0, depth-1): upsampled features + skip from encoder_[i].
  decoder_.resize(spec_.depth - 1);
  for (int i = spec_.depth - 2; i >= 0; --i) {
    const int up_c = channels_at(spec_, i + 1);
    const int skip_c = channels_at(spec_, i);
    decoder_[i] = DecoderBlock{Conv2d(up_c + skip_c, skip_c, 3, 1, 1), InstanceNorm2d(skip_c)};
  }
  stem_ = Conv2d(1, spec_.base_channels, 3, 1, 1);
  head_ = Conv2d(2 * spec_.base_channels + 1, spec_.base_channels, 3, 1, 1);
  out_ = Conv2d(spec_.base_channels, 1, 1, 1, 0);
}

Generator::Generator(const GeneratorSpec& spec, std::mt19937_64& rng) : Generator(spec) {
  stem_.init(rng, kLeakySlope);
  for (auto& b : encoder_) b.conv.init(rng, kLeakySlope);
  for (int i = spec_.depth - 2; i >= 0; --i) decoder_[i].conv.init(rng, kLeakySlope);
  head_.init(rng, kLeakySlope);
  out_.init(rng, 1.0);
}

void Generator::check_input(const Tensor& x) const {
  if (x.c() != 1 || x.w() != spec_.width || x.h() != spec_.height) {
    throw DimensionError("generator expects Nx1x" + std::to_string(spec_.height) + "x" +
                         std::to_string(spec_.width) + " input, got Nx" + std::to_string(x.c()) + "x" +
                         std::to_string(x.h()) + "x" + std::to_string(x.w()));
  }
}

Tensor Generator::forward(const Tensor& x) const {
  Trace t;
  return forward(x, t);
}

Tensor Generator::forward(const Tensor& x, Trace& t) const {
  check_input(x);
  const int depth = spec_.depth;
  t.input = x;
  t.stem_pre = stem_.forward(x);
  t.stem_out = leaky_relu(t.stem_pre);
  t.enc_in.assign(depth, {});
  t.enc_conv.assign(depth, {});
  t.enc_pre.assign(depth, {});
  t.enc_out.assign(depth, {});
  t.dec_in.assign(depth - 1, {});
  t.dec_conv.assign(depth - 1, {});
  t.dec_pre.assign(depth - 1, {});

  const Tensor* cur = &x;
  for (int i = 0; i < depth; ++i) {
    t.enc_in[i] = *cur;
    t.enc_conv[i] = encoder_[i].conv.forward(*cur);
    t.enc_pre[i] = encoder_[i].norm ? encoder_[i].norm->forward(t.enc_conv[i]) : t.enc_conv[i];
    t.enc_out[i] = leaky_relu(t.enc_pre[i]);
    cur = &t.enc_out[i];
  }
  Tensor h = t.enc_out[depth - 1];
  for (int i = depth - 2; i >= 0; --i) {
    t.dec_in[i] = concat_channels(upsample2x(h), t.enc_out[i]);
    t.dec_conv[i] = decoder_[i].conv.forward(t.dec_in[i]);
    t.dec_pre[i] = decoder_[i].norm.forward(t.dec_conv[i]);
    h = leaky_relu(t.dec_pre[i]);
  }
  t.head_in = concat_channels(upsample2x(h), concat_channels(t.stem_out, x));
  t.head_pre = head_.forward(t.head_in);
  t.head_out = leaky_relu(t.head_pre);
  t.output = sigmoid(out_.forward(t.head_out));
  return t.output;
}

void Generator::backward(const Trace& t, const Tensor& doutput) {
  const int depth = spec_.depth;
  const Tensor dlogits = sigmoid_backward(t.output, doutput);
  Tensor dh = out_.backward(t.head_out, dlogits, true);
  dh = leaky_relu_backward(t.head_pre, dh);
  Tensor dcat = head_.backward(t.head_in, dh, true);
  auto [dup, drest] = split_channels(dcat, spec_.base_channels);
  // The input channel's gradient is not needed.
  Tensor dstem = split_channels(drest, spec_.base_channels).first;
  stem_.backward(t.input, leaky_relu_backward(t.stem_pre, dstem), false);
  dh = upsample2x_backward(dup);

  std::vector<Tensor> denc(depth);
  for (int i = 0; i < depth - 1; ++i) {
    // dh is the gradient w.r.t. this decoder level's activation.
    Tensor d = leaky_relu_backward(t.dec_pre[i], dh);
    d = decoder_[i].norm.backward(t.dec_conv[i], d);
    dcat = decoder_[i].conv.backward(t.dec_in[i], d, true);
    auto [dup_i, dskip] = split_channels(dcat, channels_at(spec_, i + 1));
    denc[i] = std::move(dskip);
    dh = upsample2x_backward(dup_i);
  }
  // dh now flows into the deepest encoder output.
  Tensor dout = std::move(dh);
  for (int i = depth - 1; i >= 0; --i) {
    if (i < depth - 1) add_inplace(dout, denc[i]);
    Tensor d = leaky_relu_backward(t.enc_pre[i], dout);
    if (encoder_[i].norm) d = encoder_[i].norm->backward(t.enc_conv[i], d);
    dout = encoder_[i].conv.backward(t.enc_in[i], d, i > 0);
  }
}

std::vector<Param*> Generator::parameters() {
  std::vector<Param*> ps{&stem_.weight, &stem_.bias};
  for (auto& b : encoder_) {
    ps.push_back(&b.conv.weight);
    ps.push_back(&b.conv.bias);
    if (b.norm) {
      ps.push_back(&b.norm->gamma);
      ps.push_back(&b.norm->beta);
    }
  }
  for (auto& b : decoder_) {
    ps.push_back(&b.conv.weight);
    ps.push_back(&b.conv.bias);
    ps.push_back(&b.norm.gamma);
    ps.push_back(&b.norm.beta);
  }
  for (Conv2d* c : {&head_, &out_}) {
    ps.push_back(&c->weight);
    ps.push_back(&c->bias);
  }
  return ps;
}

std::vector<const Param*> Generator::parameters() const {
  auto mut = const_cast<Generator*>(this)->parameters();
  return {mut.begin(), mut.end()};
}

void Generator::zero_grad() {
  for (Param* p : parameters()) p->zero_grad();
}

}  // namespace inpaintseg
