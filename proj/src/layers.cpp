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

#include "inpaintseg/layers.hpp"

#include <cmath>

#include "inpaintseg/errors.hpp"

namespace inpaintseg {

Conv2d::Conv2d(int in_c, int out_c, int kernel, int stride, int pad)
    : weight(static_cast<std::size_t>(out_c) * in_c * kernel * kernel),
      bias(static_cast<std::size_t>(out_c)),
      geom_{in_c, out_c, kernel, stride, pad} {}

void Conv2d::init(std::mt19937_64& rng, double slope) {
  const double fan_in = geom_.patch();
  const double gain = std::sqrt(2.0 / (1.0 + slope * slope));
  const double bound = gain * std::sqrt(3.0 / fan_in);
  std::uniform_real_distribution<double> dist(-bound, bound);
  for (double& w : weight.value) w = dist(rng);
  std::fill(bias.value.begin(), bias.value.end(), 0.0);
}

Tensor Conv2d::forward(const Tensor& x) const { return kernels::conv2d_forward(x, weight.value, bias.value, geom_); }

Tensor Conv2d::forward_with(const Tensor& x, std::span<const double> w) const {
  return kernels::conv2d_forward(x, w, bias.value, geom_);
}

Tensor Conv2d::backward(const Tensor& x, const Tensor& dy, bool need_dx) {
  return backward_with(x, dy, weight.value, weight.grad, need_dx);
}

Tensor Conv2d::backward_with(const Tensor& x, const Tensor& dy, std::span<const double> w,
                             std::span<double> dweight, bool need_dx) {
  Tensor dx;
  kernels::conv2d_backward(x, w, dy, geom_, dweight, bias.grad, need_dx ? &dx : nullptr);
  return dx;
}

InstanceNorm2d::InstanceNorm2d(int channels, double eps)
    : gamma(static_cast<std::size_t>(channels), 1.0), beta(static_cast<std::size_t>(channels), 0.0), eps_(eps) {}

namespace {

struct Moments {
  double mean;
  double inv_std;
};

Moments plane_moments(const double* p, std::size_t n, double eps) {
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += p[i];
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (std::size_t i = 0; i < n; ++i) var += (p[i] - mean) * (p[i] - mean);
  var /= static_cast<double>(n);
  return {mean, 1.0 / std::sqrt(var + eps)};
}

}  // namespace

Tensor InstanceNorm2d::forward(const Tensor& x) const {
  if (static_cast<std::size_t>(x.c()) != gamma.size()) throw DimensionError("instance norm channel mismatch");
  Tensor y(x.n(), x.c(), x.h(), x.w());
  const std::size_t P = x.plane();
#pragma omp parallel for collapse(2) schedule(static)
  for (int n = 0; n < x.n(); ++n) {
    for (int c = 0; c < x.c(); ++c) {
      const double* src = x.sample(n) + c * P;
      double* dst = y.sample(n) + c * P;
      const Moments m = plane_moments(src, P, eps_);
      for (std::size_t i = 0; i < P; ++i) dst[i] = (src[i] - m.mean) * m.inv_std * gamma.value[c] + beta.value[c];
    }
  }
  return y;
}

Tensor InstanceNorm2d::backward(const Tensor& x, const Tensor& dy) {
  Tensor dx(x.n(), x.c(), x.h(), x.w());
  const std::size_t P = x.plane();
  const double inv_p = 1.0 / static_cast<double>(P);
  // Per-(n, c) partial sums for the affine gradients, reduced afterwards in fixed order.
  std::vector<double> dgamma(static_cast<std::size_t>(x.n()) * x.c());
  std::vector<double> dbeta(dgamma.size());
#pragma omp parallel for collapse(2) schedule(static)
  for (int n = 0; n < x.n(); ++n) {
    for (int c = 0; c < x.c(); ++c) {
      const double* src = x.sample(n) + c * P;
      const double* g = dy.sample(n) + c * P;
      double* out = dx.sample(n) + c * P;
      const Moments m = plane_moments(src, P, eps_);
      double sum_g = 0.0;
      double sum_gx = 0.0;
      for (std::size_t i = 0; i < P; ++i) {
        const double xhat = (src[i] - m.mean) * m.inv_std;
        sum_g += g[i];
        sum_gx += g[i] * xhat;
      }
      dgamma[static_cast<std::size_t>(n) * x.c() + c] = sum_gx;
      dbeta[static_cast<std::size_t>(n) * x.c() + c] = sum_g;
      const double scale = gamma.value[c] * m.inv_std;
      for (std::size_t i = 0; i < P; ++i) {
        const double xhat = (src[i] - m.mean) * m.inv_std;
        out[i] = scale * (g[i] - inv_p * sum_g - xhat * inv_p * sum_gx);
      }
    }
  }
  for (int n = 0; n < x.n(); ++n) {
    for (int c = 0; c < x.c(); ++c) {
      gamma.grad[c] += dgamma[static_cast<std::size_t>(n) * x.c() + c];
      beta.grad[c] += dbeta[static_cast<std::size_t>(n) * x.c() + c];
    }
  }
  return dx;
}

Tensor leaky_relu(const Tensor& x, double slope) {
  Tensor y(x.n(), x.c(), x.h(), x.w());
  auto src = x.values();
  auto dst = y.values();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] > 0.0 ? src[i] : slope * src[i];
  return y;
}

Tensor leaky_relu_backward(const Tensor& x, const Tensor& dy, double slope) {
  Tensor dx(x.n(), x.c(), x.h(), x.w());
  auto src = x.values();
  auto g = dy.values();
  auto dst = dx.values();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] > 0.0 ? g[i] : slope * g[i];
  return dx;
}

Tensor sigmoid(const Tensor& x) {
  Tensor y(x.n(), x.c(), x.h(), x.w());
  auto src = x.values();
  auto dst = y.values();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = 1.0 / (1.0 + std::exp(-src[i]));
  return y;
}

Tensor sigmoid_backward(const Tensor& y, const Tensor& dy) {
  Tensor dx(y.n(), y.c(), y.h(), y.w());
  auto s = y.values();
  auto g = dy.values();
  auto dst = dx.values();
  for (std::size_t i = 0; i < s.size(); ++i) dst[i] = g[i] * s[i] * (1.0 - s[i]);
  return dx;
}

Tensor upsample2x(const Tensor& x) {
  Tensor y(x.n(), x.c(), x.h() * 2, x.w() * 2);
  for (int n = 0; n < x.n(); ++n) {
    for (int c = 0; c < x.c(); ++c) {
      for (int yy = 0; yy < y.h(); ++yy) {
        for (int xx = 0; xx < y.w(); ++xx) y.at(n, c, yy, xx) = x.at(n, c, yy / 2, xx / 2);
      }
    }
  }
  return y;
}

Tensor upsample2x_backward(const Tensor& dy) {
  Tensor dx(dy.n(), dy.c(), dy.h() / 2, dy.w() / 2);
  for (int n = 0; n < dy.n(); ++n) {
    for (int c = 0; c < dy.c(); ++c) {
      for (int yy = 0; yy < dy.h(); ++yy) {
        for (int xx = 0; xx < dy.w(); ++xx) dx.at(n, c, yy / 2, xx / 2) += dy.at(n, c, yy, xx);
      }
    }
  }
  return dx;
}

Tensor concat_channels(const Tensor& a, const Tensor& b) {
  if (a.n() != b.n() || a.h() != b.h() || a.w() != b.w()) throw DimensionError("concat: spatial shape mismatch");
  Tensor y(a.n(), a.c() + b.c(), a.h(), a.w());
  for (int n = 0; n < a.n(); ++n) {
    std::copy(a.sample(n), a.sample(n) + a.sample_size(), y.sample(n));
    std::copy(b.sample(n), b.sample(n) + b.sample_size(), y.sample(n) + a.sample_size());
  }
  return y;
}

std::pair<Tensor, Tensor> split_channels(const Tensor& d, int channels_a) {
  Tensor da(d.n(), channels_a, d.h(), d.w());
  Tensor db(d.n(), d.c() - channels_a, d.h(), d.w());
  for (int n = 0; n < d.n(); ++n) {
    std::copy(d.sample(n), d.sample(n) + da.sample_size(), da.sample(n));
    std::copy(d.sample(n) + da.sample_size(), d.sample(n) + d.sample_size(), db.sample(n));
  }
  return {std::move(da), std::move(db)};
}

Tensor global_avg_pool(const Tensor& x) {
  Tensor y(x.n(), x.c(), 1, 1);
  const std::size_t P = x.plane();
  for (int n = 0; n < x.n(); ++n) {
    for (int c = 0; c < x.c(); ++c) {
      const double* p = x.sample(n) + c * P;
      double s = 0.0;
      for (std::size_t i = 0; i < P; ++i) s += p[i];
      y.at(n, c, 0, 0) = s / static_cast<double>(P);
    }
  }
  return y;
}

Tensor global_avg_pool_backward(const Tensor& dy, int h, int w) {
  Tensor dx(dy.n(), dy.c(), h, w);
  const std::size_t P = dx.plane();
  for (int n = 0; n < dy.n(); ++n) {
    for (int c = 0; c < dy.c(); ++c) {
      const double g = dy.at(n, c, 0, 0) / static_cast<double>(P);
      double* p = dx.sample(n) + c * P;
      for (std::size_t i = 0; i < P; ++i) p[i] = g;
    }
  }
  return dx;
}

void add_inplace(Tensor& dst, const Tensor& src) {
  if (!dst.same_shape(src)) throw DimensionError("add: shape mismatch");
  auto d = dst.values();
  auto s = src.values();
  for (std::size_t i = 0; i < d.size(); ++i) d[i] += s[i];
}

}  // namespace inpaintseg
