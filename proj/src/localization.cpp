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

#include "inpaintseg/localization.hpp"

#include <cmath>
#include <fstream>

#include "inpaintseg/image_io.hpp"
#include "inpaintseg/normalize.hpp"
#include "inpaintseg/trainer.hpp"

namespace inpaintseg {

std::vector<Slice> GeneratorReconstructor::reconstruct(const Slice& original,
                                                       std::span<const MaskWindow> windows) const {
  if (windows.empty()) return {};
  const Slice unit = to_unit_range(original);
  std::vector<Slice> masked;
  masked.reserve(windows.size());
  for (const MaskWindow& w : windows) masked.push_back(apply_mask(unit, w));
  const Tensor out = generator_.forward(pack_batch(masked));
  std::vector<Slice> recon;
  recon.reserve(windows.size());
  for (int i = 0; i < out.n(); ++i) {
    Slice s = unpack_sample(out, i);
    for (double& p : s.pixels()) p *= 255.0;
    recon.push_back(std::move(s));
  }
  return recon;
}

double window_loss(const Slice& original, const Slice& reconstructed, const MaskWindow& window) {
  if (original.width() != reconstructed.width() || original.height() != reconstructed.height()) {
    throw DimensionError("window_loss: slice dimensions differ");
  }
  if (!window.fits(original.width(), original.height())) throw DimensionError("window_loss: window out of bounds");
  double s = 0.0;
  for (int y = window.y0; y < window.y0 + window.gamma; ++y) {
    for (int x = window.x0; x < window.x0 + window.gamma; ++x) s += std::abs(original.at(x, y) - reconstructed.at(x, y));
  }
  return s / (static_cast<double>(window.gamma) * window.gamma);
}

Heatmap build_heatmap(const Slice& slice, const Reconstructor& reconstructor, const HeatmapOptions& options) {
  if (options.batch_windows < 1) throw ValueError("batch_windows must be >= 1");
  const int gamma = reconstructor.gamma();
  const WindowGrid grid = windows(slice.width(), slice.height(), gamma, options.k);
  const Slice norm_original = minmax_normalize(slice);

  std::vector<double> losses(grid.windows.size());
  const std::size_t batch = static_cast<std::size_t>(options.batch_windows);
  for (std::size_t start = 0; start < grid.windows.size(); start += batch) {
    const std::size_t count = std::min(batch, grid.windows.size() - start);
    std::span<const MaskWindow> chunk(grid.windows.data() + start, count);
    const std::vector<Slice> recon = reconstructor.reconstruct(slice, chunk);
    if (recon.size() != count) throw DimensionError("reconstructor returned the wrong number of slices");
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < count; ++i) {
      losses[start + i] = window_loss(norm_original, minmax_normalize(recon[i]), chunk[i]);
    }
  }

  // Single-owner accumulation in row-major window order.
  Heatmap hm;
  hm.width = slice.width();
  hm.height = slice.height();
  hm.window_count = grid.windows.size();
  std::vector<double> sum(slice.size(), 0.0);
  hm.coverage.assign(slice.size(), 0);
  for (std::size_t i = 0; i < grid.windows.size(); ++i) {
    const MaskWindow& w = grid.windows[i];
    for (int y = w.y0; y < w.y0 + w.gamma; ++y) {
      for (int x = w.x0; x < w.x0 + w.gamma; ++x) {
        const std::size_t p = static_cast<std::size_t>(y) * hm.width + x;
        sum[p] += losses[i];
        ++hm.coverage[p];
      }
    }
  }
  hm.values.assign(slice.size(), 0.0);
  for (std::size_t p = 0; p < sum.size(); ++p) {
    if (hm.coverage[p] > 0) hm.values[p] = sum[p] / hm.coverage[p];
  }
  return hm;
}

Heatmap build_heatmap(const Slice& slice, const ModelCheckpoint& checkpoint, const HeatmapOptions& options) {
  const GeneratorSpec& spec = checkpoint.generator.spec();
  if (slice.width() != spec.width || slice.height() != spec.height) {
    throw DimensionError("slice is " + std::to_string(slice.width()) + "x" + std::to_string(slice.height()) +
                         " but the checkpoint expects " + std::to_string(spec.width) + "x" +
                         std::to_string(spec.height));
  }
  GeneratorReconstructor recon(checkpoint.generator, checkpoint.gamma);
  return build_heatmap(slice, recon, options);
}

Slice heatmap_to_image(const Heatmap& heatmap) {
  return minmax_normalize(Slice(heatmap.width, heatmap.height, heatmap.values));
}

void save_heatmap(const Heatmap& heatmap, const std::filesystem::path& pfm_path, int gamma, int k,
                  const std::string& checkpoint_digest) {
  save_pfm(heatmap.width, heatmap.height, heatmap.values, pfm_path);
  auto meta_path = pfm_path;
  meta_path.replace_extension(".txt");
  std::ofstream meta(meta_path, std::ios::trunc);
  if (!meta) throw IoError("cannot write " + meta_path.string());
  meta << "gamma=" << gamma << "\nk=" << k << "\nwindows=" << heatmap.window_count
       << "\ncheckpoint_digest=" << checkpoint_digest << "\nwidth=" << heatmap.width
       << "\nheight=" << heatmap.height << '\n';
}

Heatmap load_heatmap(const std::filesystem::path& pfm_path) {
  Heatmap hm;
  hm.values = load_pfm(pfm_path, hm.width, hm.height);
  return hm;
}

}  // namespace inpaintseg
