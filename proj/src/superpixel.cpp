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

#include "inpaintseg/superpixel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace inpaintseg {

void SegmentationParams::validate() const {
  if (!(scale > 0.0)) throw ValueError("segmentation scale must be positive");
  if (!(smoothing_sigma >= 0.0)) throw ValueError("smoothing sigma must be >= 0");
  if (min_size < 1) throw ValueError("min_size must be >= 1");
}

Slice gaussian_smooth(const Slice& slice, double sigma) {
  if (sigma == 0.0) return slice;
  const int len = static_cast<int>(std::ceil(sigma * 4.0)) + 1;
  std::vector<double> kernel(len);
  for (int i = 0; i < len; ++i) kernel[i] = std::exp(-0.5 * (i / sigma) * (i / sigma));
  double sum = kernel[0];
  for (int i = 1; i < len; ++i) sum += 2.0 * kernel[i];
  for (double& k : kernel) k /= sum;

  const int w = slice.width();
  const int h = slice.height();
  Slice tmp(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double s = kernel[0] * slice.at(x, y);
      for (int i = 1; i < len; ++i) {
        s += kernel[i] * (slice.at(std::max(x - i, 0), y) + slice.at(std::min(x + i, w - 1), y));
      }
      tmp.at(x, y) = s;
    }
  }
  Slice out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double s = kernel[0] * tmp.at(x, y);
      for (int i = 1; i < len; ++i) {
        s += kernel[i] * (tmp.at(x, std::max(y - i, 0)) + tmp.at(x, std::min(y + i, h - 1)));
      }
      out.at(x, y) = s;
    }
  }
  return out;
}

std::vector<GraphEdge> build_grid_edges(const Slice& s) {
  const int w = s.width();
  const int h = s.height();
  std::vector<GraphEdge> edges;
  edges.reserve(static_cast<std::size_t>(w) * h * 4);
  auto idx = [w](int x, int y) { return y * w + x; };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double v = s.at(x, y);
      if (x + 1 < w) edges.push_back({std::abs(v - s.at(x + 1, y)), idx(x, y), idx(x + 1, y)});
      if (y + 1 < h) edges.push_back({std::abs(v - s.at(x, y + 1)), idx(x, y), idx(x, y + 1)});
      if (x + 1 < w && y + 1 < h) edges.push_back({std::abs(v - s.at(x + 1, y + 1)), idx(x, y), idx(x + 1, y + 1)});
      if (x + 1 < w && y > 0) edges.push_back({std::abs(v - s.at(x + 1, y - 1)), idx(x, y), idx(x + 1, y - 1)});
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

LabelMap canonical_labels(int width, int height, const std::vector<int>& component_of_pixel) {
  LabelMap lm;
  lm.width = width;
  lm.height = height;
  lm.labels.assign(component_of_pixel.size(), -1);
  std::vector<int> remap;
  // Component ids are pixel indices (< pixel count), so a flat table suffices.
  remap.assign(component_of_pixel.size(), -1);
  for (std::size_t p = 0; p < component_of_pixel.size(); ++p) {
    int& r = remap[component_of_pixel[p]];
    if (r < 0) r = lm.count++;
    lm.labels[p] = r;
  }
  return lm;
}

namespace {

class DisjointSet {
 public:
  explicit DisjointSet(int n) : parent_(n), rank_(n, 0), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0); }

  int find(int x) {
    int root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      const int next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  int join(int a, int b) {
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    if (rank_[a] == rank_[b]) ++rank_[a];
    return a;
  }

  int size(int root) const { return size_[root]; }

 private:
  std::vector<int> parent_;
  std::vector<int> rank_;
  std::vector<int> size_;
};

}  // namespace

LabelMap felzenszwalb(const Slice& slice, const SegmentationParams& params) {
  params.validate();
  const Slice smoothed = gaussian_smooth(slice, params.smoothing_sigma);
  const std::vector<GraphEdge> edges = build_grid_edges(smoothed);
  const int n = static_cast<int>(slice.size());

  DisjointSet ds(n);
  std::vector<double> threshold(n, params.scale);
  for (const GraphEdge& e : edges) {
    const int a = ds.find(e.a);
    const int b = ds.find(e.b);
    if (a == b) continue;
    if (e.weight <= threshold[a] && e.weight <= threshold[b]) {
      const int root = ds.join(a, b);
      // Edges arrive in ascending order, so e.weight is the new internal difference.
      threshold[root] = e.weight + params.scale / ds.size(root);
    }
  }
  for (const GraphEdge& e : edges) {
    const int a = ds.find(e.a);
    const int b = ds.find(e.b);
    if (a != b && (ds.size(a) < params.min_size || ds.size(b) < params.min_size)) ds.join(a, b);
  }

  std::vector<int> comp(n);
  for (int p = 0; p < n; ++p) comp[p] = ds.find(p);
  return canonical_labels(slice.width(), slice.height(), comp);
}

std::vector<double> segment_scores(const LabelMap& labels, const Heatmap& heatmap) {
  if (labels.width != heatmap.width || labels.height != heatmap.height) {
    throw DimensionError("segment_scores: label map and heatmap dimensions differ");
  }
  std::vector<double> sum(labels.count, 0.0);
  std::vector<std::size_t> n(labels.count, 0);
  for (std::size_t p = 0; p < labels.labels.size(); ++p) {
    sum[labels.labels[p]] += heatmap.values[p];
    ++n[labels.labels[p]];
  }
  for (int l = 0; l < labels.count; ++l) sum[l] = n[l] ? sum[l] / static_cast<double>(n[l]) : 0.0;
  return sum;
}

BinaryMask select_segment(const LabelMap& labels, const Heatmap& heatmap) {
  const auto scores = segment_scores(labels, heatmap);
  int best = 0;
  for (int l = 1; l < labels.count; ++l) {
    if (scores[l] > scores[best]) best = l;
  }
  BinaryMask mask(labels.width, labels.height);
  for (std::size_t p = 0; p < labels.labels.size(); ++p) mask.set(p, labels.labels[p] == best);
  return mask;
}

}  // namespace inpaintseg
