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

/// Log arguments are clamped to [kLogClamp, 1 - kLogClamp].
inline constexpr double kLogClamp = 1e-7;

double clamp_probability(double p);

/// Mean absolute difference over every pixel of every batch entry.
double reconstruction_loss(const Tensor& x, const Tensor& x_hat);
/// dL/dx_hat of reconstruction_loss (subgradient 0 where equal).
Tensor reconstruction_loss_grad(const Tensor& x, const Tensor& x_hat);

/// Mean of log(1 - s) over the discriminator's scores on reconstructions.
double adversarial_loss_g(std::span<const double> d_scores);

/// lambda_rec * l_rec + lambda_adv * l_adv.
double generator_objective(double l_rec, double l_adv, double lambda_rec, double lambda_adv);

/// Mean log(real) + mean log(1 - fake); the discriminator ascends this value.
double discriminator_loss(std::span<const double> real_scores, std::span<const double> fake_scores);

}  // namespace inpaintseg
