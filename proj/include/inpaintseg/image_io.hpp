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

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "inpaintseg/slice.hpp"

namespace inpaintseg {

/// Loads an 8-bit single-channel PNG or binary PGM (P5, maxval 255).
/// Color images are rejected with FormatError rather than converted.
Slice load_slice(const std::filesystem::path& path);

/// Writes an 8-bit grayscale image; the format follows the extension
/// (".pgm" writes P5, anything else PNG). Intensities are rounded to the
/// nearest integer and must lie in [0, 255].
void save_slice(const Slice& slice, const std::filesystem::path& path);

struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::array<std::uint8_t, 3>> pixels;

  RgbImage() = default;
  RgbImage(int w, int h) : width(w), height(h), pixels(static_cast<std::size_t>(w) * h) {}
  std::array<std::uint8_t, 3>& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
};

void save_rgb_png(const RgbImage& image, const std::filesystem::path& path);

/// 16-bit grayscale PNG, used for label maps.
void save_gray16_png(int width, int height, const std::vector<std::uint16_t>& values,
                     const std::filesystem::path& path);
std::vector<std::uint16_t> load_gray16_png(const std::filesystem::path& path, int& width, int& height);

/// Portable float map ("Pf", little-endian, rows stored bottom-to-top).
void save_pfm(int width, int height, const std::vector<double>& values,
              const std::filesystem::path& path);
std::vector<double> load_pfm(const std::filesystem::path& path, int& width, int& height);

}  // namespace inpaintseg
