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

#include <vector>

#include "inpaintseg/localization.hpp"
#include "inpaintseg/slice.hpp"

namespace inpaintseg {

/// Partition of the pixel grid into segments labelled 0..count-1, numbered in
/// order of first appearance in a row-major scan.
struct LabelMap {
  int width = 0;
  int height = 0;
  std::vector<int> labels;
  int count = 0;

  int at(int x, int y) const { return labels[static_cast<std::size_t>(y) * width + x]; }
};

struct SegmentationParams {
  double scale = 75.0;
  double smoothing_sigma = 0.8;
  int min_size = 20;

  void validate() const;
};

/// Weighted pixel-graph edge. Ordering is total: weight, then source, then target.
struct GraphEdge {
  double weight = 0.0;
  int a = 0;
  int b = 0;

  friend bool operator<(const GraphEdge& l, const GraphEdge& r) {
    if (l.weight != r.weight) return l.weight < r.weight;
    if (l.a != r.a) return l.a < r.a;
    return l.b < r.b;
  }
};

/// Separable Gaussian blur with clamped borders; sigma == 0 returns the input.
Slice gaussian_smooth(const Slice& slice, double sigma);

/// 8-connected grid graph (right, down, down-right, up-right neighbours) weighted by
/// absolute intensity difference, sorted ascending.
std::vector<GraphEdge> build_grid_edges(const Slice& slice);

/// Canonical relabelling of arbitrary component ids (first-appearance order).
LabelMap canonical_labels(int width, int height, const std::vector<int>& component_of_pixel);

/// Graph-based segmentation: components merge along ascending edges while the edge
/// weight does not exceed min(Int(C1) + scale/|C1|, Int(C2) + scale/|C2|); components
/// smaller than min_size are then merged along the same edge order.
LabelMap felzenszwalb(const Slice& slice, const SegmentationParams& params);

/// Mean heatmap value per segment, indexed by label.
std::vector<double> segment_scores(const LabelMap& labels, const Heatmap& heatmap);

/// The segment with the highest mean heatmap value; ties go to the lowest label.
BinaryMask select_segment(const LabelMap& labels, const Heatmap& heatmap);

}  // namespace inpaintseg
