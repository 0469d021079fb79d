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

#include "inpaintseg/metrics.hpp"

#include <cmath>

namespace inpaintseg {

double dice(const BinaryMask& a, const BinaryMask& b) {
  if (a.width() != b.width() || a.height() != b.height()) throw DimensionError("dice: mask dimensions differ");
  std::size_t na = 0, nb = 0, both = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    na += a[i];
    nb += b[i];
    both += a[i] && b[i];
  }
  if (na + nb == 0) return 1.0;
  return 2.0 * static_cast<double>(both) / static_cast<double>(na + nb);
}

namespace {

void check_same(const Slice& x, const Slice& y, const char* what) {
  if (x.width() != y.width() || x.height() != y.height()) {
    throw DimensionError(std::string(what) + ": image dimensions differ");
  }
}

double psnr_from_mse(double mse, double peak) {
  if (mse == 0.0) return kPsnrIdentical;
  return 10.0 * std::log10(peak * peak / mse);
}

}  // namespace

double psnr(const Slice& x, const Slice& y, double peak) {
  check_same(x, y, "psnr");
  return psnr_region(x, y, 0, 0, x.width(), x.height(), peak);
}

double psnr_region(const Slice& x, const Slice& y, int x0, int y0, int w, int h, double peak) {
  check_same(x, y, "psnr");
  if (x0 < 0 || y0 < 0 || w < 1 || h < 1 || x0 + w > x.width() || y0 + h > x.height()) {
    throw DimensionError("psnr: region outside image");
  }
  double se = 0.0;
  for (int yy = y0; yy < y0 + h; ++yy) {
    for (int xx = x0; xx < x0 + w; ++xx) {
      const double d = x.at(xx, yy) - y.at(xx, yy);
      se += d * d;
    }
  }
  return psnr_from_mse(se / (static_cast<double>(w) * h), peak);
}

double ssim(const Slice& x, const Slice& y, const SsimOptions& o) {
  check_same(x, y, "ssim");
  if (x.width() < o.window || x.height() < o.window) {
    throw DimensionError("ssim: image smaller than the " + std::to_string(o.window) + "-pixel window");
  }
  std::vector<double> g(o.window);
  const int half = o.window / 2;
  double gs = 0.0;
  for (int i = 0; i < o.window; ++i) {
    g[i] = std::exp(-0.5 * ((i - half) / o.sigma) * ((i - half) / o.sigma));
    gs += g[i];
  }
  for (double& e : g) e /= gs;

  const double c1 = (o.k1 * o.peak) * (o.k1 * o.peak);
  const double c2 = (o.k2 * o.peak) * (o.k2 * o.peak);
  const int W = x.width();
  const int H = x.height();
  const int ow = W - o.window + 1;
  const int oh = H - o.window + 1;

  // Separable filtering of x, y, x^2, y^2, xy ("valid" region only).
  auto filter = [&](auto pixel) {
    std::vector<double> rows(static_cast<std::size_t>(H) * ow);
    for (int r = 0; r < H; ++r) {
      for (int c = 0; c < ow; ++c) {
        double s = 0.0;
        for (int i = 0; i < o.window; ++i) s += g[i] * pixel(c + i, r);
        rows[static_cast<std::size_t>(r) * ow + c] = s;
      }
    }
    std::vector<double> out(static_cast<std::size_t>(oh) * ow);
    for (int r = 0; r < oh; ++r) {
      for (int c = 0; c < ow; ++c) {
        double s = 0.0;
        for (int i = 0; i < o.window; ++i) s += g[i] * rows[static_cast<std::size_t>(r + i) * ow + c];
        out[static_cast<std::size_t>(r) * ow + c] = s;
      }
    }
    return out;
  };
  const auto mx = filter([&](int c, int r) { return x.at(c, r); });
  const auto my = filter([&](int c, int r) { return y.at(c, r); });
  const auto mxx = filter([&](int c, int r) { return x.at(c, r) * x.at(c, r); });
  const auto myy = filter([&](int c, int r) { return y.at(c, r) * y.at(c, r); });
  const auto mxy = filter([&](int c, int r) { return x.at(c, r) * y.at(c, r); });

  double total = 0.0;
  for (std::size_t i = 0; i < mx.size(); ++i) {
    const double vx = mxx[i] - mx[i] * mx[i];
    const double vy = myy[i] - my[i] * my[i];
    const double cov = mxy[i] - mx[i] * my[i];
    total += ((2.0 * mx[i] * my[i] + c1) * (2.0 * cov + c2)) /
             ((mx[i] * mx[i] + my[i] * my[i] + c1) * (vx + vy + c2));
  }
  return total / static_cast<double>(mx.size());
}

MetricReport report(std::span<const double> values) {
  if (values.empty()) throw ValueError("report: no values");
  MetricReport r;
  r.values.assign(values.begin(), values.end());
  double s = 0.0;
  for (double v : values) s += v;
  r.mean = s / static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - r.mean) * (v - r.mean);
  r.std = std::sqrt(ss / static_cast<double>(values.size()));
  return r;
}

}  // namespace inpaintseg
