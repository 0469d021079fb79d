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

#include "inpaintseg/discriminator.hpp"

#include <cmath>
#include <string>

#include "inpaintseg/errors.hpp"
#include "inpaintseg/spectral_norm.hpp"

namespace inpaintseg {

void DiscriminatorSpec::validate() const {
  if (depth < 1) throw ValueError("discriminator depth must be >= 1");
  if (base_channels < 1) throw ValueError("discriminator base_channels must be >= 1");
  if (spectral_norm_iters < 1) throw ValueError("spectral_norm_iters must be >= 1");
  const int unit = 1 << depth;
  if (width < 1 || height < 1 || width % unit != 0 || height % unit != 0) {
    throw DimensionError("discriminator input " + std::to_string(width) + "x" + std::to_string(height) +
                         " is not divisible by 2^depth = " + std::to_string(unit));
  }
}

namespace {

void init_unit(std::vector<double>& x, std::size_t n, std::mt19937_64* rng) {
  x.assign(n, 0.0);
  if (!rng) return;
  std::normal_distribution<double> dist(0.0, 1.0);
  double s = 0.0;
  for (double& e : x) {
    e = dist(*rng);
    s += e * e;
  }
  s = std::sqrt(s);
  for (double& e : x) e /= s;
}

SpectralConv make_layer(int in_c, int out_c, int kernel, int stride, int pad) {
  SpectralConv l{Conv2d(in_c, out_c, kernel, stride, pad), {}, {}};
  l.u.assign(out_c, 0.0);
  l.v.assign(static_cast<std::size_t>(in_c) * kernel * kernel, 0.0);
  return l;
}

void init_layer(SpectralConv& l, std::mt19937_64& rng, double slope) {
  l.conv.init(rng, slope);
  init_unit(l.u, l.u.size(), &rng);
  // Settle v (and u) on the initial weight so the first sigma is meaningful.
  auto r = spectral_normalize(l.conv.weight.value, l.rows(), l.cols(), l.u, 1);
  l.u = std::move(r.u);
  l.v = std::move(r.v);
}

std::vector<double> effective_weight(const SpectralConv& l, double& sigma) {
  sigma = spectral_sigma(l.conv.weight.value, l.rows(), l.cols(), l.u, l.v);
  std::vector<double> w = l.conv.weight.value;
  if (sigma > 1e-12) {
    for (double& e : w) e /= sigma;
  } else {
    sigma = 0.0;
  }
  return w;
}

}  // namespace

Discriminator::Discriminator(const DiscriminatorSpec& spec) : spec_(spec) {
  spec_.validate();
  int in_c = 1;
  for (int i = 0; i < spec_.depth; ++i) {
    const int out_c = spec_.base_channels << i;
    convs_.push_back(make_layer(in_c, out_c, 4, 2, 1));
    in_c = out_c;
  }
  linear_ = make_layer(in_c, 1, 1, 1, 0);
}

Discriminator::Discriminator(const DiscriminatorSpec& spec, std::mt19937_64& rng) : Discriminator(spec) {
  for (auto& l : convs_) init_layer(l, rng, kLeakySlope);
  init_layer(linear_, rng, 1.0);
}

std::vector<double> Discriminator::forward(const Tensor& x) const {
  Trace t;
  auto logits = forward_logits(x, t);
  for (double& z : logits) z = 1.0 / (1.0 + std::exp(-z));
  return logits;
}

std::vector<double> Discriminator::forward_logits(const Tensor& x, Trace& t) const {
  if (x.c() != 1 || x.w() != spec_.width || x.h() != spec_.height) {
    throw DimensionError("discriminator expects Nx1x" + std::to_string(spec_.height) + "x" +
                         std::to_string(spec_.width) + " input");
  }
  t.conv_in.assign(convs_.size(), {});
  t.conv_out.assign(convs_.size(), {});
  t.weights.assign(convs_.size() + 1, {});
  t.sigmas.assign(convs_.size() + 1, 0.0);
  Tensor h = x;
  for (std::size_t i = 0; i < convs_.size(); ++i) {
    t.weights[i] = effective_weight(convs_[i], t.sigmas[i]);
    t.conv_in[i] = std::move(h);
    t.conv_out[i] = convs_[i].conv.forward_with(t.conv_in[i], t.weights[i]);
    h = leaky_relu(t.conv_out[i]);
  }
  t.pooled = global_avg_pool(h);
  t.weights.back() = effective_weight(linear_, t.sigmas.back());
  t.logits = linear_.conv.forward_with(t.pooled, t.weights.back());
  return {t.logits.values().begin(), t.logits.values().end()};
}

namespace {

void weight_grad_through_norm(SpectralConv& l, const std::vector<double>& effective, double sigma,
                              const std::vector<double>& grad_effective) {
  if (sigma == 0.0) {
    for (std::size_t i = 0; i < grad_effective.size(); ++i) l.conv.weight.grad[i] += grad_effective[i];
    return;
  }
  spectral_norm_backward(effective, grad_effective, l.rows(), l.cols(), l.u, l.v, sigma, l.conv.weight.grad);
}

}  // namespace

Tensor Discriminator::backward(const Trace& t, const std::vector<double>& dlogits, bool accumulate_params,
                               bool need_dx) {
  Tensor dz(static_cast<int>(dlogits.size()), 1, 1, 1);
  std::copy(dlogits.begin(), dlogits.end(), dz.data());

  // Bias gradients are accumulated by the conv kernels; keep a snapshot to discard them
  // when parameters are frozen.
  std::vector<std::vector<double>> bias_snapshot;
  if (!accumulate_params) {
    for (auto* l : spectral_layers()) bias_snapshot.push_back(l->conv.bias.grad);
  }

  std::vector<double> gw(t.weights.back().size(), 0.0);
  Tensor dh = linear_.conv.backward_with(t.pooled, dz, t.weights.back(), gw, true);
  if (accumulate_params) weight_grad_through_norm(linear_, t.weights.back(), t.sigmas.back(), gw);
  dh = global_avg_pool_backward(dh, t.conv_out.back().h(), t.conv_out.back().w());
  for (int i = static_cast<int>(convs_.size()) - 1; i >= 0; --i) {
    dh = leaky_relu_backward(t.conv_out[i], dh);
    std::vector<double> gwi;
    if (accumulate_params) gwi.assign(t.weights[i].size(), 0.0);
    dh = convs_[i].conv.backward_with(t.conv_in[i], dh, t.weights[i], gwi, i > 0 || need_dx);
    if (accumulate_params) weight_grad_through_norm(convs_[i], t.weights[i], t.sigmas[i], gwi);
  }

  if (!accumulate_params) {
    auto layers = spectral_layers();
    for (std::size_t i = 0; i < layers.size(); ++i) layers[i]->conv.bias.grad = std::move(bias_snapshot[i]);
  }
  return need_dx ? dh : Tensor{};
}

void Discriminator::refresh_spectral_estimates() {
  for (auto* l : spectral_layers()) {
    auto r = spectral_normalize(l->conv.weight.value, l->rows(), l->cols(), l->u, spec_.spectral_norm_iters);
    l->u = std::move(r.u);
    l->v = std::move(r.v);
  }
}

std::vector<SpectralConv*> Discriminator::spectral_layers() {
  std::vector<SpectralConv*> ls;
  for (auto& l : convs_) ls.push_back(&l);
  ls.push_back(&linear_);
  return ls;
}

std::vector<const SpectralConv*> Discriminator::spectral_layers() const {
  auto mut = const_cast<Discriminator*>(this)->spectral_layers();
  return {mut.begin(), mut.end()};
}

std::vector<Param*> Discriminator::parameters() {
  std::vector<Param*> ps;
  for (auto* l : spectral_layers()) {
    ps.push_back(&l->conv.weight);
    ps.push_back(&l->conv.bias);
  }
  return ps;
}

std::vector<const Param*> Discriminator::parameters() const {
  auto mut = const_cast<Discriminator*>(this)->parameters();
  return {mut.begin(), mut.end()};
}

void Discriminator::zero_grad() {
  for (Param* p : parameters()) p->zero_grad();
}

}  // namespace inpaintseg
