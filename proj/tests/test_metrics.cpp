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

#include "inpaintseg/image_io.hpp"
#include "inpaintseg/metrics.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace inpaintseg;

namespace {

const std::filesystem::path kData = std::filesystem::path(INPAINTSEG_SOURCE_DIR) / "tests" / "data";

BinaryMask mask_of(int w, int h, std::initializer_list<int> on) {
  BinaryMask m(w, h);
  for (int i : on) m.set(i % w, i / w, true);
  return m;
}

}  // namespace

TEST_CASE("dice") {
  const BinaryMask a = mask_of(4, 4, {0, 1, 5, 6});
  CHECK(dice(a, a) == 1.0);
  CHECK(dice(a, mask_of(4, 4, {10, 11})) == 0.0);
  CHECK(dice(mask_of(4, 1, {0, 1}), mask_of(4, 1, {1, 2})) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(dice(BinaryMask(3, 3), BinaryMask(3, 3)) == 1.0);
  CHECK(dice(BinaryMask(3, 3), mask_of(3, 3, {4})) == 0.0);
  CHECK(dice(mask_of(4, 4, {0, 1, 2}), mask_of(4, 4, {1, 2, 3, 4})) ==
        dice(mask_of(4, 4, {1, 2, 3, 4}), mask_of(4, 4, {0, 1, 2})));
  CHECK_THROWS_AS(dice(BinaryMask(3, 3), BinaryMask(3, 4)), DimensionError);
}

TEST_CASE("psnr") {
  std::mt19937_64 rng(1);
  const Slice x = testing::random_slice(8, 8, rng, 10, 240);
  CHECK(psnr(x, x) == kPsnrIdentical);
  CHECK(std::isinf(psnr(x, x)));

  Slice y = x;
  for (int i = 0; i < 64; ++i) y.pixels()[i] += (i % 2 ? 1.0 : -1.0);
  CHECK(std::abs(psnr(x, y) - 20.0 * std::log10(255.0)) < 1e-6);
  CHECK(std::abs(psnr(x, y) - 48.130803608679) < 1e-6);

  CHECK(std::abs(psnr(Slice(4, 4, 0.0), Slice(4, 4, 255.0))) < 1e-6);

  Slice z = x;
  z.at(3, 3) += 2.0;
  CHECK(psnr(x, z) > psnr(x, y));
  CHECK(std::isfinite(psnr(x, z)));

  const Slice a = load_slice(kData / "ssim_a.png");
  const Slice b = load_slice(kData / "ssim_b.png");
  CHECK(std::abs(psnr(a, b) - 20.99606224880982) < 1e-6);
}

TEST_CASE("psnr_region only looks inside the rectangle") {
  Slice a(8, 8, 50.0), b(8, 8, 50.0);
  b.at(0, 0) = 0.0;
  b.at(5, 5) = 51.0;
  CHECK(std::abs(psnr_region(a, b, 4, 4, 4, 4) - 20.0 * std::log10(255.0 * 4)) < 1e-9);
  CHECK(psnr_region(a, b, 1, 1, 3, 3) == kPsnrIdentical);
  CHECK_THROWS_AS(psnr_region(a, b, 6, 6, 4, 4), DimensionError);
}

TEST_CASE("ssim") {
  std::mt19937_64 rng(2);
  const Slice x = testing::random_slice(24, 20, rng);
  CHECK(ssim(x, x) == doctest::Approx(1.0).epsilon(1e-12));
  Slice inv = x;
  for (double& p : inv.pixels()) p = 255.0 - p;
  CHECK(ssim(x, inv) < 1.0);
  const Slice y = testing::random_slice(24, 20, rng);
  CHECK(ssim(x, y) == doctest::Approx(ssim(y, x)).epsilon(1e-12));
  CHECK(ssim(x, y) < 1.0 - 1e-9);
  CHECK_THROWS_AS(ssim(Slice(8, 8), Slice(8, 8)), DimensionError);
}

TEST_CASE("ssim matches the double-loop oracle and a reference library value") {
  const Slice a = load_slice(kData / "ssim_a.png");
  const Slice b = load_slice(kData / "ssim_b.png");
  CHECK(std::abs(ssim(a, b) - oracles::ssim(a, b)) < 1e-6);
  CHECK(std::abs(ssim(a, b) - 0.9587844147489852) < 1e-6);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const Slice x = testing::random_slice(16, 13, rng);
    const Slice y = testing::random_slice(16, 13, rng);
    CHECK(std::abs(ssim(x, y) - oracles::ssim(x, y)) < 1e-9);
  }
}

TEST_CASE("report uses the population standard deviation") {
  const std::vector<double> ones{1, 1, 1};
  const MetricReport r1 = report(ones);
  CHECK(r1.mean == 1.0);
  CHECK(r1.std == 0.0);
  const std::vector<double> two{0, 2};
  const MetricReport r2 = report(two);
  CHECK(r2.mean == 1.0);
  CHECK(r2.std == 1.0);
  const std::vector<double> a{0.3, 0.9, 0.1, 0.5}, b{0.5, 0.1, 0.9, 0.3};
  CHECK(report(a).std == doctest::Approx(report(b).std).epsilon(1e-15));
  CHECK_THROWS_AS(report(std::vector<double>{}), ValueError);
}
