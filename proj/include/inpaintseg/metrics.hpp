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

#include <limits>
#include <span>
#include <vector>

#include "inpaintseg/slice.hpp"

namespace inpaintseg {

/// Sample values with their mean and population standard deviation.
struct MetricReport {
  std::vector<double> values;
  double mean = 0.0;
  double std = 0.0;
};

/// 2|A and B| / (|A| + |B|); two empty masks score 1.
double dice(const BinaryMask& a, const BinaryMask& b);

inline constexpr double kPsnrIdentical = std::numeric_limits<double>::infinity();

/// 10 log10(peak^2 / MSE) in dB; identical inputs return kPsnrIdentical.
double psnr(const Slice& x, const Slice& y, double peak = 255.0);

/// PSNR restricted to a rectangular region.
double psnr_region(const Slice& x, const Slice& y, int x0, int y0, int w, int h, double peak = 255.0);

struct SsimOptions {
  int window = 11;
  double sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;
  double peak = 255.0;
};

/// Mean structural similarity over every fully-contained Gaussian window.
double ssim(const Slice& x, const Slice& y, const SsimOptions& options = {});

/// Throws ValueError on an empty list.
MetricReport report(std::span<const double> values);

}  // namespace inpaintseg
