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

#include "inpaintseg/spectral_norm.hpp"

#include <cmath>

#include "inpaintseg/errors.hpp"

namespace inpaintseg {

namespace {

constexpr double kNormEps = 1e-12;

// Returns the norm before scaling; leaves `x` untouched when it is (numerically) zero.
double normalize(std::vector<double>& x) {
  double s = 0.0;
  for (double e : x) s += e * e;
  const double n = std::sqrt(s);
  if (n > kNormEps) {
    for (double& e : x) e /= n;
  }
  return n;
}

void mat_vec(std::span<const double> w, int rows, int cols, std::span<const double> v, std::vector<double>& out) {
  out.assign(rows, 0.0);
  for (int r = 0; r < rows; ++r) {
    const double* row = w.data() + static_cast<std::size_t>(r) * cols;
    double s = 0.0;
    for (int c = 0; c < cols; ++c) s += row[c] * v[c];
    out[r] = s;
  }
}

void mat_t_vec(std::span<const double> w, int rows, int cols, std::span<const double> u, std::vector<double>& out) {
  out.assign(cols, 0.0);
  for (int r = 0; r < rows; ++r) {
    const double* row = w.data() + static_cast<std::size_t>(r) * cols;
    const double ur = u[r];
    for (int c = 0; c < cols; ++c) out[c] += row[c] * ur;
  }
}

}  // namespace

double spectral_sigma(std::span<const double> weight, int rows, int cols, std::span<const double> u,
                      std::span<const double> v) {
  std::vector<double> wv;
  mat_vec(weight, rows, cols, v, wv);
  double s = 0.0;
  for (int r = 0; r < rows; ++r) s += u[r] * wv[r];
  return s;
}

SpectralNormResult spectral_normalize(std::span<const double> weight, int rows, int cols,
                                      std::span<const double> u, int iters) {
  if (weight.size() != static_cast<std::size_t>(rows) * cols || u.size() != static_cast<std::size_t>(rows)) {
    throw DimensionError("spectral_normalize: weight/u shape mismatch");
  }
  if (iters < 1) throw ValueError("spectral_normalize needs at least one power iteration");
  SpectralNormResult r;
  r.u.assign(u.begin(), u.end());
  for (int i = 0; i < iters; ++i) {
    mat_t_vec(weight, rows, cols, r.u, r.v);
    normalize(r.v);
    std::vector<double> next;
    mat_vec(weight, rows, cols, r.v, next);
    if (normalize(next) > kNormEps) r.u = std::move(next);
  }
  r.sigma = spectral_sigma(weight, rows, cols, r.u, r.v);
  r.weight.assign(weight.begin(), weight.end());
  if (!(r.sigma > kNormEps)) {
    r.degenerate = true;
    return r;
  }
  for (double& w : r.weight) w /= r.sigma;
  return r;
}

void spectral_norm_backward(std::span<const double> normalized, std::span<const double> grad_normalized,
                            int rows, int cols, std::span<const double> u, std::span<const double> v,
                            double sigma, std::span<double> grad_weight) {
  double inner = 0.0;
  for (std::size_t i = 0; i < normalized.size(); ++i) inner += grad_normalized[i] * normalized[i];
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const std::size_t i = static_cast<std::size_t>(r) * cols + c;
      grad_weight[i] += (grad_normalized[i] - inner * u[r] * v[c]) / sigma;
    }
  }
}

}  // namespace inpaintseg
