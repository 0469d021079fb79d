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

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "inpaintseg/checkpoint.hpp"
#include "inpaintseg/masking.hpp"
#include "inpaintseg/slice.hpp"

namespace inpaintseg {

/// Per-pixel mean of the losses of every window covering the pixel.
struct Heatmap {
  int width = 0;
  int height = 0;
  std::vector<double> values;
  std::vector<int> coverage;
  std::size_t window_count = 0;

  double at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
};

/// Maps a slice and a set of erased windows to one full reconstruction per window,
/// in [0, 255].
class Reconstructor {
 public:
  virtual ~Reconstructor() = default;
  virtual int gamma() const = 0;
  virtual std::vector<Slice> reconstruct(const Slice& original, std::span<const MaskWindow> windows) const = 0;
};

/// Runs the trained generator on each masked copy.
class GeneratorReconstructor : public Reconstructor {
 public:
  GeneratorReconstructor(const Generator& generator, int gamma) : generator_(generator), gamma_(gamma) {}
  int gamma() const override { return gamma_; }
  std::vector<Slice> reconstruct(const Slice& original, std::span<const MaskWindow> windows) const override;

 private:
  const Generator& generator_;
  int gamma_;
};

/// Perfect reconstructor: returns the unmasked original. Oracle for testing.
class IdentityReconstructor : public Reconstructor {
 public:
  explicit IdentityReconstructor(int gamma) : gamma_(gamma) {}
  int gamma() const override { return gamma_; }
  std::vector<Slice> reconstruct(const Slice& original, std::span<const MaskWindow> windows) const override {
    return std::vector<Slice>(windows.size(), original);
  }

 private:
  int gamma_;
};

/// Mean absolute difference over the window only. Inputs are full-slice normalized.
double window_loss(const Slice& original, const Slice& reconstructed, const MaskWindow& window);

struct HeatmapOptions {
  int k = 4;
  /// Windows reconstructed per network call.
  int batch_windows = 16;
};

/// Sliding-window heatmap of `slice` (intensities in [0, 255]).
Heatmap build_heatmap(const Slice& slice, const Reconstructor& reconstructor, const HeatmapOptions& options);
Heatmap build_heatmap(const Slice& slice, const ModelCheckpoint& checkpoint, const HeatmapOptions& options);

/// Min-max scaled to [0, 255] for export.
Slice heatmap_to_image(const Heatmap& heatmap);

/// Writes `<path>` as PFM and `<path>.txt` (same stem, .txt) with gamma, k, window count
/// and checkpoint digest.
void save_heatmap(const Heatmap& heatmap, const std::filesystem::path& pfm_path, int gamma, int k,
                  const std::string& checkpoint_digest);
Heatmap load_heatmap(const std::filesystem::path& pfm_path);

}  // namespace inpaintseg
