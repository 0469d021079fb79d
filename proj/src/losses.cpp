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

#include "inpaintseg/losses.hpp"

#include <algorithm>
#include <cmath>

#include "inpaintseg/errors.hpp"

namespace inpaintseg {

double clamp_probability(double p) { return std::clamp(p, kLogClamp, 1.0 - kLogClamp); }

double reconstruction_loss(const Tensor& x, const Tensor& x_hat) {
  if (!x.same_shape(x_hat)) throw DimensionError("reconstruction_loss: shape mismatch");
  if (x.size() == 0) throw DimensionError("reconstruction_loss: empty batch");
  double s = 0.0;
  auto a = x.values();
  auto b = x_hat.values();
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s / static_cast<double>(a.size());
}

Tensor reconstruction_loss_grad(const Tensor& x, const Tensor& x_hat) {
  if (!x.same_shape(x_hat)) throw DimensionError("reconstruction_loss: shape mismatch");
  Tensor g(x.n(), x.c(), x.h(), x.w());
  const double scale = 1.0 / static_cast<double>(x.size());
  auto a = x.values();
  auto b = x_hat.values();
  auto d = g.values();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = b[i] - a[i];
    d[i] = diff > 0.0 ? scale : (diff < 0.0 ? -scale : 0.0);
  }
  return g;
}

double adversarial_loss_g(std::span<const double> d_scores) {
  if (d_scores.empty()) throw DimensionError("adversarial_loss_g: empty batch");
  double s = 0.0;
  for (double p : d_scores) s += std::log(1.0 - clamp_probability(p));
  return s / static_cast<double>(d_scores.size());
}

double generator_objective(double l_rec, double l_adv, double lambda_rec, double lambda_adv) {
  return lambda_rec * l_rec + lambda_adv * l_adv;
}

double discriminator_loss(std::span<const double> real_scores, std::span<const double> fake_scores) {
  if (real_scores.empty() || fake_scores.empty()) throw DimensionError("discriminator_loss: empty batch");
  double real = 0.0;
  for (double p : real_scores) real += std::log(clamp_probability(p));
  double fake = 0.0;
  for (double p : fake_scores) fake += std::log(1.0 - clamp_probability(p));
  return real / static_cast<double>(real_scores.size()) + fake / static_cast<double>(fake_scores.size());
}

}  // namespace inpaintseg
