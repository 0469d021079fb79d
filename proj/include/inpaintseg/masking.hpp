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

#include <random>
#include <utility>
#include <vector>

#include "inpaintseg/slice.hpp"

namespace inpaintseg {

/// Square mask placement: top-left origin plus side length gamma.
struct MaskWindow {
  int x0 = 0;
  int y0 = 0;
  int gamma = 1;

  bool operator==(const MaskWindow&) const = default;
  bool fits(int width, int height) const {
    return x0 >= 0 && y0 >= 0 && gamma >= 1 && x0 + gamma <= width && y0 + gamma <= height;
  }
};

/// Row-major sequence of in-bounds windows at stride `step`.
struct WindowGrid {
  std::vector<MaskWindow> windows;
  int step = 1;
  int columns = 0;  // distinct x origins
  int rows = 0;     // distinct y origins
};

/// Erases (zeroes) the window. Throws DimensionError when it does not fit.
Slice apply_mask(const Slice& slice, const MaskWindow& window);

/// Erases a gamma x gamma square at a uniformly random in-bounds position.
std::pair<Slice, MaskWindow> random_mask(const Slice& slice, int gamma, std::mt19937_64& rng);

/// Draws only the origin; shared by random_mask and the training sampler.
MaskWindow random_window(int width, int height, int gamma, std::mt19937_64& rng);

/// Origins along one axis: 0, k, 2k, ... plus a final origin flush with the far edge
/// when the stride does not land there.
std::vector<int> axis_origins(int extent, int gamma, int k);

/// The sliding-window sweep over a width x height grid.
WindowGrid windows(int width, int height, int gamma, int k);

}  // namespace inpaintseg
