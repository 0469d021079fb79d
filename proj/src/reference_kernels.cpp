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

#include "inpaintseg/kernels.hpp"

#include "inpaintseg/errors.hpp"

namespace inpaintseg::reference {

Tensor conv2d_forward(const Tensor& x, std::span<const double> weight, std::span<const double> bias,
                      const ConvGeometry& g) {
  if (x.c() != g.in_c || weight.size() != g.weight_size()) {
    throw DimensionError("reference conv: shape mismatch");
  }
  const int oh = g.out_h(x.h());
  const int ow = g.out_w(x.w());
  const int k = g.kernel;
  Tensor y(x.n(), g.out_c, oh, ow);
  for (int n = 0; n < x.n(); ++n) {
    for (int o = 0; o < g.out_c; ++o) {
      for (int oy = 0; oy < oh; ++oy) {
        for (int ox = 0; ox < ow; ++ox) {
          double s = bias.empty() ? 0.0 : bias[o];
          for (int c = 0; c < g.in_c; ++c) {
            for (int ky = 0; ky < k; ++ky) {
              const int iy = oy * g.stride - g.pad + ky;
              if (iy < 0 || iy >= x.h()) continue;
              for (int kx = 0; kx < k; ++kx) {
                const int ix = ox * g.stride - g.pad + kx;
                if (ix < 0 || ix >= x.w()) continue;
                s += weight[((static_cast<std::size_t>(o) * g.in_c + c) * k + ky) * k + kx] * x.at(n, c, iy, ix);
              }
            }
          }
          y.at(n, o, oy, ox) = s;
        }
      }
    }
  }
  return y;
}

void conv2d_backward(const Tensor& x, std::span<const double> weight, const Tensor& dy,
                     const ConvGeometry& g, std::span<double> dweight, std::span<double> dbias,
                     Tensor* dx) {
  const int oh = g.out_h(x.h());
  const int ow = g.out_w(x.w());
  const int k = g.kernel;
  if (dx) *dx = Tensor(x.n(), x.c(), x.h(), x.w());
  for (int n = 0; n < x.n(); ++n) {
    for (int o = 0; o < g.out_c; ++o) {
      for (int oy = 0; oy < oh; ++oy) {
        for (int ox = 0; ox < ow; ++ox) {
          const double d = dy.at(n, o, oy, ox);
          if (!dbias.empty()) dbias[o] += d;
          for (int c = 0; c < g.in_c; ++c) {
            for (int ky = 0; ky < k; ++ky) {
              const int iy = oy * g.stride - g.pad + ky;
              if (iy < 0 || iy >= x.h()) continue;
              for (int kx = 0; kx < k; ++kx) {
                const int ix = ox * g.stride - g.pad + kx;
                if (ix < 0 || ix >= x.w()) continue;
                const std::size_t wi = ((static_cast<std::size_t>(o) * g.in_c + c) * k + ky) * k + kx;
                if (!dweight.empty()) dweight[wi] += d * x.at(n, c, iy, ix);
                if (dx) dx->at(n, c, iy, ix) += d * weight[wi];
              }
            }
          }
        }
      }
    }
  }
}

}  // namespace inpaintseg::reference
