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

#include "inpaintseg/masking.hpp"

#include <string>

namespace inpaintseg {

Slice apply_mask(const Slice& slice, const MaskWindow& window) {
  if (!window.fits(slice.width(), slice.height())) {
    throw DimensionError("mask window (" + std::to_string(window.x0) + "," + std::to_string(window.y0) +
                         ",gamma=" + std::to_string(window.gamma) + ") outside " +
                         std::to_string(slice.width()) + "x" + std::to_string(slice.height()) + " slice");
  }
  Slice out = slice;
  for (int y = window.y0; y < window.y0 + window.gamma; ++y) {
    for (int x = window.x0; x < window.x0 + window.gamma; ++x) out.at(x, y) = 0.0;
  }
  return out;
}

MaskWindow random_window(int width, int height, int gamma, std::mt19937_64& rng) {
  if (gamma < 1 || gamma > width || gamma > height) {
    throw ValueError("gamma " + std::to_string(gamma) + " does not fit a " + std::to_string(width) +
                     "x" + std::to_string(height) + " slice");
  }
  std::uniform_int_distribution<int> dx(0, width - gamma);
  std::uniform_int_distribution<int> dy(0, height - gamma);
  const int x0 = dx(rng);
  const int y0 = dy(rng);
  return {x0, y0, gamma};
}

std::pair<Slice, MaskWindow> random_mask(const Slice& slice, int gamma, std::mt19937_64& rng) {
  const MaskWindow w = random_window(slice.width(), slice.height(), gamma, rng);
  return {apply_mask(slice, w), w};
}

std::vector<int> axis_origins(int extent, int gamma, int k) {
  std::vector<int> origins;
  const int last = extent - gamma;
  for (int o = 0; o <= last; o += k) origins.push_back(o);
  if (origins.back() != last) origins.push_back(last);
  return origins;
}

WindowGrid windows(int width, int height, int gamma, int k) {
  if (k < 1) throw ValueError("window step must be >= 1, got " + std::to_string(k));
  if (gamma < 1 || gamma > width || gamma > height) {
    throw ValueError("gamma " + std::to_string(gamma) + " does not fit a " + std::to_string(width) +
                     "x" + std::to_string(height) + " grid");
  }
  const auto xs = axis_origins(width, gamma, k);
  const auto ys = axis_origins(height, gamma, k);
  WindowGrid grid;
  grid.step = k;
  grid.columns = static_cast<int>(xs.size());
  grid.rows = static_cast<int>(ys.size());
  grid.windows.reserve(xs.size() * ys.size());
  for (int y : ys) {
    for (int x : xs) grid.windows.push_back({x, y, gamma});
  }
  return grid;
}

}  // namespace inpaintseg
