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
#include <vector>

namespace inpaintseg {

struct SpectralNormResult {
  std::vector<double> weight;  // weight / sigma, or the input unchanged when degenerate
  std::vector<double> u;       // updated left-singular estimate (rows)
  std::vector<double> v;       // matching right-singular estimate (cols)
  double sigma = 0.0;
  bool degenerate = false;
};

/// Power-iteration estimate of the largest singular value of the row-major
/// `rows x cols` matrix, starting from the unit vector `u`, and the rescaled matrix.
/// A zero matrix (sigma == 0) is returned unchanged with `degenerate` set.
SpectralNormResult spectral_normalize(std::span<const double> weight, int rows, int cols,
                                      std::span<const double> u, int iters);

/// sigma = u^T W v for fixed estimates.
double spectral_sigma(std::span<const double> weight, int rows, int cols, std::span<const double> u,
                      std::span<const double> v);

/// Chain rule through W -> W / sigma(W) with u, v held constant:
/// dW += (G - <G, W/sigma> u v^T) / sigma.
void spectral_norm_backward(std::span<const double> normalized, std::span<const double> grad_normalized,
                            int rows, int cols, std::span<const double> u, std::span<const double> v,
                            double sigma, std::span<double> grad_weight);

}  // namespace inpaintseg
