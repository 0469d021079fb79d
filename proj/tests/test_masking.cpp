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

#include <cmath>
#include <set>

#include "inpaintseg/masking.hpp"
#include "support.hpp"

using namespace inpaintseg;

TEST_CASE("apply_mask zeroes exactly the window") {
  const Slice ones(4, 4, 1.0);
  const MaskWindow w{1, 1, 2};
  const Slice m = apply_mask(ones, w);
  for (int y = 0; y < 4; ++y) {
    for (int x = 0; x < 4; ++x) {
      const bool inside = x >= 1 && x <= 2 && y >= 1 && y <= 2;
      CHECK(m.at(x, y) == (inside ? 0.0 : 1.0));
    }
  }
  CHECK(apply_mask(m, w) == m);
  CHECK(apply_mask(ones, MaskWindow{0, 0, 4}) == Slice(4, 4, 0.0));
  CHECK_THROWS_AS(apply_mask(ones, MaskWindow{3, 0, 2}), DimensionError);
}

TEST_CASE("random_mask is seeded") {
  std::mt19937_64 a(11), b(11);
  const Slice s(64, 64, 1.0);
  for (int i = 0; i < 20; ++i) {
    const auto ra = random_mask(s, 16, a);
    const auto rb = random_mask(s, 16, b);
    CHECK(ra.second == rb.second);
    CHECK(ra.first == rb.first);
    CHECK(ra.first == apply_mask(s, ra.second));
  }
}

TEST_CASE("random_mask with gamma equal to the slice size") {
  std::mt19937_64 rng(5);
  const auto r = random_mask(Slice(8, 8, 2.0), 8, rng);
  CHECK(r.second == MaskWindow{0, 0, 8});
  CHECK_THROWS_AS(random_mask(Slice(8, 8), 9, rng), ValueError);
}

TEST_CASE("random_window origins are uniform over the feasible grid") {
  // 49 x 49 = 2401 cells, 1e5 draws. Chi-square with 2400 degrees of freedom;
  // the p = 0.01 upper critical value is about 2563.
  std::mt19937_64 rng(20240611);
  const int draws = 100000;
  std::vector<int> counts(49 * 49, 0);
  for (int i = 0; i < draws; ++i) {
    const MaskWindow w = random_window(64, 64, 16, rng);
    REQUIRE(w.fits(64, 64));
    ++counts[w.y0 * 49 + w.x0];
  }
  const double expected = static_cast<double>(draws) / counts.size();
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  // Wilson-Hilferty normal approximation for the critical value.
  const double k = 2400.0;
  const double z = 2.3263478740408408;
  const double critical = k * std::pow(1.0 - 2.0 / (9.0 * k) + z * std::sqrt(2.0 / (9.0 * k)), 3.0);
  CHECK(critical == doctest::Approx(2563.0).epsilon(0.01));
  CHECK(chi2 < critical);
  for (int c : counts) CHECK(c > 0);
}

namespace {

// Every origin position whose window fits and lies on the stride lattice, plus the
// flush origin that reaches the last row/column.
std::set<std::pair<int, int>> enumerate_origins(int w, int h, int gamma, int k) {
  std::set<int> xs, ys;
  for (int x = 0; x + gamma <= w; ++x) {
    if (x % k == 0 || x + gamma == w) xs.insert(x);
  }
  for (int y = 0; y + gamma <= h; ++y) {
    if (y % k == 0 || y + gamma == h) ys.insert(y);
  }
  std::set<std::pair<int, int>> out;
  for (int y : ys) {
    for (int x : xs) out.insert({x, y});
  }
  return out;
}

}  // namespace

TEST_CASE("windows count matches exhaustive enumeration") {
  const WindowGrid g = windows(256, 192, 32, 4);
  CHECK(g.columns == 57);
  CHECK(g.rows == 41);
  CHECK(g.windows.size() == 2337);
  std::set<std::pair<int, int>> got;
  for (const auto& w : g.windows) {
    CHECK(w.gamma == 32);
    got.insert({w.x0, w.y0});
  }
  CHECK(got == enumerate_origins(256, 192, 32, 4));
}

TEST_CASE("windows small cases") {
  const WindowGrid one = windows(16, 16, 16, 4);
  REQUIRE(one.windows.size() == 1);
  CHECK(one.windows[0] == MaskWindow{0, 0, 16});

  const WindowGrid g = windows(10, 10, 4, 3);
  CHECK(axis_origins(10, 4, 3) == std::vector<int>{0, 3, 6});
  CHECK(g.windows.size() == 9);
  CHECK(g.windows[1] == MaskWindow{3, 0, 4});
  CHECK(g.windows[3] == MaskWindow{0, 3, 4});
}

TEST_CASE("windows adds a flush final origin when the stride does not divide") {
  CHECK(axis_origins(11, 4, 3) == std::vector<int>{0, 3, 6, 7});
  for (int w = 4; w <= 20; ++w) {
    for (int k = 1; k <= 5; ++k) {
      const WindowGrid g = windows(w, w + 3, 4, k);
      std::set<std::pair<int, int>> got;
      for (const auto& win : g.windows) got.insert({win.x0, win.y0});
      CHECK(got == enumerate_origins(w, w + 3, 4, k));
      CHECK(got.size() == g.windows.size());
    }
  }
}

TEST_CASE("windows validation") {
  CHECK_THROWS_AS(windows(16, 16, 17, 4), ValueError);
  CHECK_THROWS_AS(windows(16, 16, 4, 0), ValueError);
  CHECK_THROWS_AS(windows(16, 16, 0, 1), ValueError);
}
