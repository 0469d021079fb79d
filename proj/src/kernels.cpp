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

#include <algorithm>
#include <vector>

#include "inpaintseg/errors.hpp"

namespace inpaintseg::kernels {

namespace {

constexpr int kMr = 4;
constexpr int kNr = 8;

// Register tile: a kMr x kNr block of C updated over the full K extent.
inline void micro_tile(int K, const double* __restrict A, int lda, const double* __restrict B,
                       int ldb, double* __restrict C, int ldc) {
  double acc[kMr][kNr] = {};
  for (int k = 0; k < K; ++k) {
    const double* b = B + static_cast<std::size_t>(k) * ldb;
    for (int r = 0; r < kMr; ++r) {
      const double a = A[static_cast<std::size_t>(r) * lda + k];
#pragma omp simd
      for (int j = 0; j < kNr; ++j) acc[r][j] += a * b[j];
    }
  }
  for (int r = 0; r < kMr; ++r) {
    double* c = C + static_cast<std::size_t>(r) * ldc;
#pragma omp simd
    for (int j = 0; j < kNr; ++j) c[j] += acc[r][j];
  }
}

inline void edge_tile(int mr, int nr, int K, const double* A, int lda, const double* B, int ldb,
                      double* C, int ldc) {
  for (int r = 0; r < mr; ++r) {
    for (int k = 0; k < K; ++k) {
      const double a = A[static_cast<std::size_t>(r) * lda + k];
      const double* b = B + static_cast<std::size_t>(k) * ldb;
      double* c = C + static_cast<std::size_t>(r) * ldc;
      for (int j = 0; j < nr; ++j) c[j] += a * b[j];
    }
  }
}

}  // namespace

void gemm_acc(int M, int N, int K, const double* A, int lda, const double* B, int ldb, double* C,
              int ldc) {
  // K is blocked so each B panel stays in cache while the row tiles sweep over it.
  constexpr int kKc = 256;
  for (int k0 = 0; k0 < K; k0 += kKc) {
    const int kc = std::min(kKc, K - k0);
    const double* Ak = A + k0;
    const double* Bk = B + static_cast<std::size_t>(k0) * ldb;
    int i = 0;
    for (; i + kMr <= M; i += kMr) {
      int j = 0;
      for (; j + kNr <= N; j += kNr) {
        micro_tile(kc, Ak + static_cast<std::size_t>(i) * lda, lda, Bk + j, ldb,
                   C + static_cast<std::size_t>(i) * ldc + j, ldc);
      }
      if (j < N) {
        edge_tile(kMr, N - j, kc, Ak + static_cast<std::size_t>(i) * lda, lda, Bk + j, ldb,
                  C + static_cast<std::size_t>(i) * ldc + j, ldc);
      }
    }
    if (i < M) {
      edge_tile(M - i, N, kc, Ak + static_cast<std::size_t>(i) * lda, lda, Bk, ldb,
                C + static_cast<std::size_t>(i) * ldc, ldc);
    }
  }
}

void im2col(const double* x, int c, int h, int w, const ConvGeometry& g, double* col) {
  const int oh = g.out_h(h);
  const int ow = g.out_w(w);
  const int k = g.kernel;
  for (int ci = 0; ci < c; ++ci) {
    const double* xc = x + static_cast<std::size_t>(ci) * h * w;
    for (int ky = 0; ky < k; ++ky) {
      for (int kx = 0; kx < k; ++kx) {
        double* row = col + (static_cast<std::size_t>(ci * k + ky) * k + kx) * oh * ow;
        for (int oy = 0; oy < oh; ++oy) {
          const int iy = oy * g.stride - g.pad + ky;
          double* dst = row + static_cast<std::size_t>(oy) * ow;
          if (iy < 0 || iy >= h) {
            std::fill(dst, dst + ow, 0.0);
            continue;
          }
          const double* src = xc + static_cast<std::size_t>(iy) * w;
          for (int ox = 0; ox < ow; ++ox) {
            const int ix = ox * g.stride - g.pad + kx;
            dst[ox] = (ix >= 0 && ix < w) ? src[ix] : 0.0;
          }
        }
      }
    }
  }
}

void col2im_acc(const double* col, int c, int h, int w, const ConvGeometry& g, double* x) {
  const int oh = g.out_h(h);
  const int ow = g.out_w(w);
  const int k = g.kernel;
  for (int ci = 0; ci < c; ++ci) {
    double* xc = x + static_cast<std::size_t>(ci) * h * w;
    for (int ky = 0; ky < k; ++ky) {
      for (int kx = 0; kx < k; ++kx) {
        const double* row = col + (static_cast<std::size_t>(ci * k + ky) * k + kx) * oh * ow;
        for (int oy = 0; oy < oh; ++oy) {
          const int iy = oy * g.stride - g.pad + ky;
          if (iy < 0 || iy >= h) continue;
          const double* src = row + static_cast<std::size_t>(oy) * ow;
          double* dst = xc + static_cast<std::size_t>(iy) * w;
          for (int ox = 0; ox < ow; ++ox) {
            const int ix = ox * g.stride - g.pad + kx;
            if (ix >= 0 && ix < w) dst[ix] += src[ox];
          }
        }
      }
    }
  }
}

namespace {

void check_input(const Tensor& x, std::span<const double> weight, const ConvGeometry& g) {
  if (x.c() != g.in_c) throw DimensionError("conv input channels do not match layer");
  if (weight.size() != g.weight_size()) throw DimensionError("conv weight size does not match layer");
  if (g.out_h(x.h()) < 1 || g.out_w(x.w()) < 1) throw DimensionError("conv input smaller than kernel");
}

bool is_pointwise(const ConvGeometry& g) { return g.kernel == 1 && g.stride == 1 && g.pad == 0; }

}  // namespace

Tensor conv2d_forward(const Tensor& x, std::span<const double> weight, std::span<const double> bias,
                      const ConvGeometry& g) {
  check_input(x, weight, g);
  const int oh = g.out_h(x.h());
  const int ow = g.out_w(x.w());
  const int P = oh * ow;
  const int Kc = g.patch();
  Tensor y(x.n(), g.out_c, oh, ow);
  const bool pointwise = is_pointwise(g);

#pragma omp parallel
  {
    std::vector<double> col(pointwise ? 0 : static_cast<std::size_t>(Kc) * P);
#pragma omp for schedule(static)
    for (int n = 0; n < x.n(); ++n) {
      double* ys = y.sample(n);
      for (int o = 0; o < g.out_c; ++o) {
        std::fill(ys + static_cast<std::size_t>(o) * P, ys + static_cast<std::size_t>(o + 1) * P,
                  bias.empty() ? 0.0 : bias[o]);
      }
      const double* B = x.sample(n);
      if (!pointwise) {
        im2col(x.sample(n), x.c(), x.h(), x.w(), g, col.data());
        B = col.data();
      }
      gemm_acc(g.out_c, P, Kc, weight.data(), Kc, B, P, ys, P);
    }
  }
  return y;
}

void conv2d_backward(const Tensor& x, std::span<const double> weight, const Tensor& dy,
                     const ConvGeometry& g, std::span<double> dweight, std::span<double> dbias,
                     Tensor* dx) {
  check_input(x, weight, g);
  const int oh = g.out_h(x.h());
  const int ow = g.out_w(x.w());
  if (dy.n() != x.n() || dy.c() != g.out_c || dy.h() != oh || dy.w() != ow) {
    throw DimensionError("conv output gradient has the wrong shape");
  }
  const int P = oh * ow;
  const int Kc = g.patch();
  const int N = x.n();
  const bool pointwise = is_pointwise(g);

  // W^T, shared by every sample's input-gradient product.
  std::vector<double> wt;
  if (dx) {
    *dx = Tensor(x.n(), x.c(), x.h(), x.w());
    wt.resize(weight.size());
    for (int o = 0; o < g.out_c; ++o) {
      for (int k = 0; k < Kc; ++k) wt[static_cast<std::size_t>(k) * g.out_c + o] = weight[static_cast<std::size_t>(o) * Kc + k];
    }
  }
  const bool want_dw = !dweight.empty();
  std::vector<double> dw_per_sample(want_dw ? static_cast<std::size_t>(N) * weight.size() : 0);

#pragma omp parallel
  {
    std::vector<double> col(static_cast<std::size_t>(Kc) * P);
    std::vector<double> colt(want_dw ? static_cast<std::size_t>(Kc) * P : 0);
#pragma omp for schedule(static)
    for (int n = 0; n < N; ++n) {
      const double* dys = dy.sample(n);
      if (want_dw) {
        const double* cols = x.sample(n);
        if (!pointwise) {
          im2col(x.sample(n), x.c(), x.h(), x.w(), g, col.data());
          cols = col.data();
        }
        for (int k = 0; k < Kc; ++k) {
          for (int p = 0; p < P; ++p) colt[static_cast<std::size_t>(p) * Kc + k] = cols[static_cast<std::size_t>(k) * P + p];
        }
        gemm_acc(g.out_c, Kc, P, dys, P, colt.data(), Kc,
                 dw_per_sample.data() + static_cast<std::size_t>(n) * weight.size(), Kc);
      }
      if (dx) {
        if (pointwise) {
          gemm_acc(Kc, P, g.out_c, wt.data(), g.out_c, dys, P, dx->sample(n), P);
        } else {
          std::fill(col.begin(), col.end(), 0.0);
          gemm_acc(Kc, P, g.out_c, wt.data(), g.out_c, dys, P, col.data(), P);
          col2im_acc(col.data(), x.c(), x.h(), x.w(), g, dx->sample(n));
        }
      }
    }
  }

  if (want_dw) {
    for (int n = 0; n < N; ++n) {
      const double* src = dw_per_sample.data() + static_cast<std::size_t>(n) * weight.size();
      for (std::size_t i = 0; i < weight.size(); ++i) dweight[i] += src[i];
    }
  }
  if (!dbias.empty()) {
    for (int n = 0; n < N; ++n) {
      const double* dys = dy.sample(n);
      for (int o = 0; o < g.out_c; ++o) {
        double s = 0.0;
        for (int p = 0; p < P; ++p) s += dys[static_cast<std::size_t>(o) * P + p];
        dbias[o] += s;
      }
    }
  }
}

}  // namespace inpaintseg::kernels
