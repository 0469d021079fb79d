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

#include <cstddef>
#include <span>
#include <vector>

#include "inpaintseg/errors.hpp"

namespace inpaintseg {

/// Closed intensity interval [lo, hi].
struct IntensityRange {
  double lo = 0.0;
  double hi = 0.0;

  double span() const { return hi - lo; }
};

/// Single-channel 2D image, row-major, real-valued intensities.
class Slice {
 public:
  Slice() = default;
  Slice(int width, int height, double fill = 0.0);
  Slice(int width, int height, std::vector<double> pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return pixels_.size(); }
  bool empty() const { return pixels_.empty(); }

  double& at(int x, int y) { return pixels_[static_cast<std::size_t>(y) * width_ + x]; }
  double at(int x, int y) const { return pixels_[static_cast<std::size_t>(y) * width_ + x]; }

  std::span<double> pixels() { return pixels_; }
  std::span<const double> pixels() const { return pixels_; }

  IntensityRange range() const;

  bool operator==(const Slice&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> pixels_;
};

/// Boolean image, e.g. a predicted or ground-truth anomaly region.
class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(int width, int height, bool fill = false)
      : width_(width), height_(height),
        mask_(static_cast<std::size_t>(width) * height, fill ? 1 : 0) {}

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return mask_.size(); }

  bool at(int x, int y) const { return mask_[static_cast<std::size_t>(y) * width_ + x] != 0; }
  void set(int x, int y, bool v) { mask_[static_cast<std::size_t>(y) * width_ + x] = v ? 1 : 0; }
  bool operator[](std::size_t i) const { return mask_[i] != 0; }
  void set(std::size_t i, bool v) { mask_[i] = v ? 1 : 0; }

  std::size_t count() const;

  bool operator==(const BinaryMask&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<unsigned char> mask_;
};

/// Converts a 0/255 slice (as stored on disk) into a mask; any pixel > 127 is set.
BinaryMask mask_from_slice(const Slice& s);
Slice mask_to_slice(const BinaryMask& m);

}  // namespace inpaintseg
