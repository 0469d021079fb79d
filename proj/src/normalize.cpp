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

#include "inpaintseg/normalize.hpp"

#include <string>

namespace inpaintseg {

Slice minmax_normalize(const Slice& slice) {
  if (slice.empty()) throw DimensionError("cannot normalize an empty slice");
  const IntensityRange r = slice.range();
  Slice out(slice.width(), slice.height(), 0.0);
  if (r.hi == r.lo) return out;
  const double span = r.span();
  auto src = slice.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = (src[i] - r.lo) / span * 255.0;
  return out;
}

Slice pad_to(const Slice& slice, int target_w, int target_h) {
  if (target_w < slice.width() || target_h < slice.height()) {
    throw DimensionError("pad target " + std::to_string(target_w) + "x" + std::to_string(target_h) +
                         " is smaller than slice " + std::to_string(slice.width()) + "x" +
                         std::to_string(slice.height()));
  }
  Slice out(target_w, target_h, 0.0);
  const int ox = (target_w - slice.width()) / 2;
  const int oy = (target_h - slice.height()) / 2;
  for (int y = 0; y < slice.height(); ++y) {
    for (int x = 0; x < slice.width(); ++x) out.at(x + ox, y + oy) = slice.at(x, y);
  }
  return out;
}

namespace {

Slice scale_checked(const Slice& slice, double lo, double hi, double factor) {
  Slice out(slice.width(), slice.height());
  auto src = slice.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (src[i] < lo || src[i] > hi) {
      throw ValueError("intensity " + std::to_string(src[i]) + " outside [" + std::to_string(lo) +
                       ", " + std::to_string(hi) + "]");
    }
    dst[i] = src[i] * factor;
  }
  return out;
}

}  // namespace

Slice to_unit_range(const Slice& slice) {
  // Division keeps 51 -> 0.2 exact to the last ulp, multiplication by 1/255 does not.
  Slice out(slice.width(), slice.height());
  auto src = slice.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (src[i] < 0.0 || src[i] > 255.0) {
      throw ValueError("intensity " + std::to_string(src[i]) + " outside [0, 255]");
    }
    dst[i] = src[i] / 255.0;
  }
  return out;
}

Slice from_unit_range(const Slice& slice) { return scale_checked(slice, 0.0, 1.0, 255.0); }

}  // namespace inpaintseg
