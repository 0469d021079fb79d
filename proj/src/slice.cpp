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

#include "inpaintseg/slice.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace inpaintseg {

Slice::Slice(int width, int height, double fill) : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw DimensionError("slice dimensions must be positive, got " + std::to_string(width) + "x" +
                         std::to_string(height));
  }
  pixels_.assign(static_cast<std::size_t>(width) * height, fill);
}

Slice::Slice(int width, int height, std::vector<double> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width < 1 || height < 1) {
    throw DimensionError("slice dimensions must be positive");
  }
  if (pixels_.size() != static_cast<std::size_t>(width) * height) {
    throw DimensionError("pixel count does not match " + std::to_string(width) + "x" +
                         std::to_string(height));
  }
  for (double p : pixels_) {
    if (!std::isfinite(p)) throw ValueError("slice intensities must be finite");
  }
}

IntensityRange Slice::range() const {
  if (pixels_.empty()) return {};
  auto [lo, hi] = std::minmax_element(pixels_.begin(), pixels_.end());
  return {*lo, *hi};
}

std::size_t BinaryMask::count() const {
  return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), 1));
}

BinaryMask mask_from_slice(const Slice& s) {
  BinaryMask m(s.width(), s.height());
  auto px = s.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) m.set(i, px[i] > 127.0);
  return m;
}

Slice mask_to_slice(const BinaryMask& m) {
  Slice s(m.width(), m.height());
  auto px = s.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) px[i] = m[i] ? 255.0 : 0.0;
  return s;
}

}  // namespace inpaintseg
