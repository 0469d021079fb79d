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

#include <omp.h>

#include <cmath>

#include "inpaintseg/checkpoint.hpp"
#include "inpaintseg/image_io.hpp"
#include "inpaintseg/localization.hpp"
#include "inpaintseg/masking.hpp"
#include "inpaintseg/normalize.hpp"
#include "support.hpp"

using namespace inpaintseg;

namespace {

// Returns, for window i, a black slice with 255 at the window origin and extra[i] at the
// pixel diagonally below-right of it.
class MarkedReconstructor : public Reconstructor {
 public:
  MarkedReconstructor(int gamma, std::vector<double> extra) : gamma_(gamma), extra_(std::move(extra)) {}
  int gamma() const override { return gamma_; }
  std::vector<Slice> reconstruct(const Slice& original, std::span<const MaskWindow> ws) const override {
    std::vector<Slice> out;
    for (const MaskWindow& w : ws) {
      Slice s(original.width(), original.height(), 0.0);
      s.at(w.x0, w.y0) = 255.0;
      s.at(w.x0 + 1, w.y0 + 1) = extra_[static_cast<std::size_t>(w.y0) * 2 + w.x0];
      out.push_back(std::move(s));
    }
    return out;
  }

 private:
  int gamma_;
  std::vector<double> extra_;
};

// Deterministic pseudo reconstruction that depends on the window position.
class ShiftedReconstructor : public Reconstructor {
 public:
  explicit ShiftedReconstructor(int gamma) : gamma_(gamma) {}
  int gamma() const override { return gamma_; }
  std::vector<Slice> reconstruct(const Slice& original, std::span<const MaskWindow> ws) const override {
    std::vector<Slice> out;
    for (const MaskWindow& w : ws) {
      Slice s = original;
      for (int y = 0; y < s.height(); ++y) {
        for (int x = 0; x < s.width(); ++x) s.at(x, y) = std::fmod(s.at(x, y) + 7.0 * w.x0 + 3.0 * w.y0 + x, 256.0);
      }
      out.push_back(std::move(s));
    }
    return out;
  }

 private:
  int gamma_;
};

}  // namespace

TEST_CASE("window_loss") {
  std::mt19937_64 rng(1);
  const Slice a = testing::random_slice(6, 6, rng);
  const MaskWindow w{1, 2, 3};
  CHECK(window_loss(a, a, w) == 0.0);
  Slice b = a;
  for (double& p : b.pixels()) p += 10.0;
  CHECK(window_loss(a, b, w) == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(window_loss(testing::slice_from(2, 2, {0, 255, 255, 0}), testing::slice_from(2, 2, {0, 0, 255, 255}),
                    MaskWindow{0, 0, 2}) == 127.5);
  CHECK_THROWS_AS(window_loss(a, Slice(5, 6), w), DimensionError);
}

TEST_CASE("identity reconstructor yields an all-zero heatmap") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    const Slice s = testing::random_slice(32, 24, rng);
    const Heatmap hm = build_heatmap(s, IdentityReconstructor(8), {4, 16});
    CHECK(hm.window_count == windows(32, 24, 8, 4).windows.size());
    for (double v : hm.values) REQUIRE(v == 0.0);
  }
  const Heatmap flat = build_heatmap(Slice(16, 16, 9.0), IdentityReconstructor(4), {3, 5});
  for (double v : flat.values) CHECK(v == 0.0);
}

TEST_CASE("a single window gives a constant heatmap") {
  std::mt19937_64 rng(3);
  const Slice s = testing::random_slice(8, 8, rng);
  const ShiftedReconstructor recon(8);
  const Heatmap hm = build_heatmap(s, recon, {4, 16});
  REQUIRE(hm.window_count == 1);
  const MaskWindow whole{0, 0, 8};
  const double expected = window_loss(minmax_normalize(s), minmax_normalize(recon.reconstruct(s, {&whole, 1})[0]), whole);
  CHECK(expected > 0.0);
  for (double v : hm.values) CHECK(v == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("overlapping windows average their losses per pixel") {
  // 3x3 slice, gamma 2, stride 1: four windows. Window i scores (255 + extra[i]) / 4.
  const std::vector<double> extra{0, 51, 102, 153};
  const Heatmap hm = build_heatmap(Slice(3, 3, 0.0), MarkedReconstructor(2, extra), {1, 3});
  REQUIRE(hm.window_count == 4);
  const double l00 = 255.0 / 4, l10 = 306.0 / 4, l01 = 357.0 / 4, l11 = 408.0 / 4;
  CHECK(hm.at(0, 0) == doctest::Approx(l00));
  CHECK(hm.at(2, 0) == doctest::Approx(l10));
  CHECK(hm.at(0, 2) == doctest::Approx(l01));
  CHECK(hm.at(2, 2) == doctest::Approx(l11));
  CHECK(hm.at(1, 0) == doctest::Approx((l00 + l10) / 2));
  CHECK(hm.at(0, 1) == doctest::Approx((l00 + l01) / 2));
  CHECK(hm.at(1, 1) == doctest::Approx((l00 + l10 + l01 + l11) / 4));
  CHECK(hm.coverage[4] == 4);
  CHECK(hm.coverage[0] == 1);
}

TEST_CASE("heatmap matches a per-pixel gather over covering windows") {
  std::mt19937_64 rng(4);
  const Slice s = testing::random_slice(20, 14, rng);
  const ShiftedReconstructor recon(6);
  const Heatmap hm = build_heatmap(s, recon, {4, 5});
  const WindowGrid grid = windows(20, 14, 6, 4);
  std::vector<double> losses;
  for (const MaskWindow& w : grid.windows) {
    losses.push_back(window_loss(minmax_normalize(s), minmax_normalize(recon.reconstruct(s, {&w, 1})[0]), w));
  }
  for (int y = 0; y < 14; ++y) {
    for (int x = 0; x < 20; ++x) {
      double sum = 0.0;
      int n = 0;
      for (std::size_t i = 0; i < grid.windows.size(); ++i) {
        const MaskWindow& w = grid.windows[i];
        if (x >= w.x0 && x < w.x0 + w.gamma && y >= w.y0 && y < w.y0 + w.gamma) {
          sum += losses[i];
          ++n;
        }
      }
      REQUIRE(n > 0);
      CHECK(hm.at(x, y) == doctest::Approx(sum / n).epsilon(1e-12));
    }
  }
}

TEST_CASE("heatmap is independent of batching and thread count") {
  std::mt19937_64 rng(5);
  const Slice s = testing::random_slice(24, 24, rng);
  const ShiftedReconstructor recon(8);
  omp_set_num_threads(1);
  const Heatmap ref = build_heatmap(s, recon, {4, 16});
  for (int batch : {1, 7, 1000}) CHECK(build_heatmap(s, recon, {4, batch}).values == ref.values);
  omp_set_num_threads(3);
  CHECK(build_heatmap(s, recon, {4, 5}).values == ref.values);
  omp_set_num_threads(1);
  CHECK_THROWS_AS(build_heatmap(s, recon, {4, 0}), ValueError);
}

TEST_CASE("heatmap window count at 256x192") {
  const Heatmap hm = build_heatmap(Slice(256, 192, 0.0), IdentityReconstructor(32), {4, 4096});
  CHECK(hm.window_count == 2337);
}

TEST_CASE("heatmap_to_image") {
  Heatmap hm;
  hm.width = 2;
  hm.height = 2;
  hm.values = {0, 0, 0, 0};
  CHECK(heatmap_to_image(hm) == Slice(2, 2, 0.0));
  hm.values = {0, 3.5, 3.5, 0};
  CHECK(heatmap_to_image(hm) == testing::slice_from(2, 2, {0, 255, 255, 0}));
}

TEST_CASE("generator-backed heatmap checks dimensions and writes metadata") {
  std::mt19937_64 rng(6);
  const ModelCheckpoint ck{Generator(GeneratorSpec{2, 4, 16, 16}, rng),
                           Discriminator(DiscriminatorSpec{2, 4, 1, 16, 16}, rng), 8, 0};
  CHECK_THROWS_AS(build_heatmap(Slice(32, 32), ck, {}), DimensionError);
  const Slice s = testing::random_slice(16, 16, rng);
  const Heatmap hm = build_heatmap(s, ck, {4, 3});
  CHECK(hm.window_count == 9);
  for (double v : hm.values) {
    CHECK(v >= 0.0);
    CHECK(v <= 255.0);
  }

  testing::TempDir dir;
  save_heatmap(hm, dir / "h.pfm", 8, 4, "abc123");
  const Heatmap back = load_heatmap(dir / "h.pfm");
  CHECK(back.width == 16);
  REQUIRE(back.values.size() == hm.values.size());
  for (std::size_t i = 0; i < hm.values.size(); ++i) {
    CHECK(back.values[i] == static_cast<double>(static_cast<float>(hm.values[i])));
  }
  CHECK(testing::read_file(dir / "h.txt") ==
        "gamma=8\nk=4\nwindows=9\ncheckpoint_digest=abc123\nwidth=16\nheight=16\n");
}
