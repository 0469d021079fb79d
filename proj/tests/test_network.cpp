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
#include <fstream>

#include "inpaintseg/checkpoint.hpp"
#include "inpaintseg/discriminator.hpp"
#include "inpaintseg/generator.hpp"
#include "inpaintseg/spectral_norm.hpp"
#include "inpaintseg/trainer.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace inpaintseg;

namespace {

std::vector<double> ones_vector(int n) { return std::vector<double>(n, 1.0 / std::sqrt(n)); }

Tensor random_batch(int n, int w, int h, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Tensor t(n, 1, h, w);
  for (double& v : t.values()) v = u(rng);
  return t;
}

std::vector<double> flat_params(const std::vector<const Param*>& ps) {
  std::vector<double> out;
  for (const Param* p : ps) out.insert(out.end(), p->value.begin(), p->value.end());
  return out;
}

}  // namespace

TEST_CASE("generator output shape and range") {
  std::mt19937_64 rng(1);
  const Generator g(GeneratorSpec{4, 32, 64, 64}, rng);
  const Tensor y = g.forward(Tensor(1, 1, 64, 64));
  CHECK(y.n() == 1);
  CHECK(y.c() == 1);
  CHECK(y.h() == 64);
  CHECK(y.w() == 64);
  for (double v : y.values()) {
    REQUIRE(v > 0.0);
    REQUIRE(v < 1.0);
  }
}

TEST_CASE("generator batch shape and inference determinism") {
  std::mt19937_64 rng(2);
  const Generator g(GeneratorSpec{4, 8, 64, 64}, rng);
  const Tensor x = random_batch(16, 64, 64, rng);
  const Tensor a = g.forward(x);
  CHECK(a.n() == 16);
  CHECK(a.h() == 64);
  CHECK(a.w() == 64);
  CHECK(g.forward(x) == a);
}

TEST_CASE("generator construction is seeded") {
  std::mt19937_64 a(3), b(3), c(4);
  const GeneratorSpec spec{3, 8, 32, 32};
  const Generator ga(spec, a), gb(spec, b), gc(spec, c);
  CHECK(flat_params(ga.parameters()) == flat_params(gb.parameters()));
  CHECK(flat_params(ga.parameters()) != flat_params(gc.parameters()));
}

TEST_CASE("generator rejects sizes not divisible by 2^depth") {
  CHECK_THROWS_AS(Generator(GeneratorSpec{4, 8, 60, 60}), DimensionError);
  CHECK_THROWS_AS(Discriminator(DiscriminatorSpec{4, 8, 1, 60, 60}), DimensionError);
  const Generator g(GeneratorSpec{2, 4, 16, 16});
  CHECK_THROWS_AS(g.forward(Tensor(1, 1, 8, 8)), DimensionError);
}

TEST_CASE("discriminator outputs one probability per sample") {
  std::mt19937_64 rng(5);
  const Discriminator d(DiscriminatorSpec{4, 8, 1, 64, 64}, rng);
  for (int n : {1, 3, 7}) {
    const auto p = d.forward(random_batch(n, 64, 64, rng));
    REQUIRE(p.size() == static_cast<std::size_t>(n));
    for (double v : p) {
      CHECK(v > 0.0);
      CHECK(v < 1.0);
    }
  }
  const auto p = d.forward(random_batch(4, 64, 64, rng));
  MESSAGE("untrained discriminator scores: " << p[0] << " " << p[1] << " " << p[2] << " " << p[3]);
}

TEST_CASE("spectral_normalize on known matrices") {
  SUBCASE("identity is unchanged") {
    const std::vector<double> eye{1, 0, 0, 0, 1, 0, 0, 0, 1};
    const auto r = spectral_normalize(eye, 3, 3, ones_vector(3), 1);
    CHECK(r.sigma == doctest::Approx(1.0).epsilon(1e-12));
    for (int i = 0; i < 9; ++i) CHECK(r.weight[i] == doctest::Approx(eye[i]).epsilon(1e-12));
  }
  SUBCASE("diag(4,1,1) after 50 iterations") {
    const std::vector<double> d{4, 0, 0, 0, 1, 0, 0, 0, 1};
    const auto r = spectral_normalize(d, 3, 3, ones_vector(3), 50);
    const std::vector<double> expect{1, 0, 0, 0, 0.25, 0, 0, 0, 0.25};
    for (int i = 0; i < 9; ++i) CHECK(std::abs(r.weight[i] - expect[i]) < 1e-3);
    CHECK(std::abs(r.sigma - 4.0) < 1e-3);
  }
  SUBCASE("zero matrix is degenerate") {
    const std::vector<double> z(6, 0.0);
    const auto r = spectral_normalize(z, 2, 3, ones_vector(2), 3);
    CHECK(r.degenerate);
    CHECK(r.weight == z);
  }
}

TEST_CASE("spectral_normalize matches an exact SVD on random matrices") {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> nd(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int rows = 8, cols = 8;
    std::vector<double> w(rows * cols);
    for (double& x : w) x = nd(rng);
    std::vector<double> u(rows);
    for (double& x : u) x = nd(rng);
    const auto r = spectral_normalize(w, rows, cols, u, 1000);
    CHECK(r.sigma == doctest::Approx(oracles::largest_singular_value(w, rows, cols)).epsilon(1e-6));
    CHECK(std::abs(oracles::largest_singular_value(r.weight, rows, cols) - 1.0) < 1e-3);
  }
}

TEST_CASE("persistent estimates converge with one iteration per call") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd(0.0, 1.0);
  std::vector<double> w(12 * 20);
  for (double& x : w) x = nd(rng);
  std::vector<double> u = ones_vector(12);
  SpectralNormResult r;
  for (int step = 0; step < 2000; ++step) {
    r = spectral_normalize(w, 12, 20, u, 1);
    u = r.u;
  }
  CHECK(r.sigma == doctest::Approx(oracles::largest_singular_value(w, 12, 20)).epsilon(1e-6));
}

TEST_CASE("discriminator gradients through spectral norm match finite differences") {
  std::mt19937_64 rng(8);
  Discriminator d(DiscriminatorSpec{2, 3, 1, 8, 8}, rng);
  d.refresh_spectral_estimates();
  const Tensor x = random_batch(2, 8, 8, rng);
  const std::vector<double> r{0.7, -1.3};
  auto objective = [&] {
    Discriminator::Trace t;
    const auto z = d.forward_logits(x, t);
    return r[0] * z[0] + r[1] * z[1];
  };
  d.zero_grad();
  Discriminator::Trace t;
  d.forward_logits(x, t);
  d.backward(t, r, true, false);
  const double h = 1e-6;
  int checked = 0;
  for (Param* p : d.parameters()) {
    for (std::size_t i = 0; i < p->size(); ++i) {
      const double keep = p->value[i];
      p->value[i] = keep + h;
      const double up = objective();
      p->value[i] = keep - h;
      const double down = objective();
      p->value[i] = keep;
      CHECK(p->grad[i] == doctest::Approx((up - down) / (2 * h)).epsilon(1e-5).scale(1.0));
      ++checked;
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("frozen discriminator leaves parameter gradients untouched") {
  std::mt19937_64 rng(9);
  Discriminator d(DiscriminatorSpec{2, 3, 1, 8, 8}, rng);
  d.zero_grad();
  Discriminator::Trace t;
  const Tensor x = random_batch(2, 8, 8, rng);
  d.forward_logits(x, t);
  const Tensor dx = d.backward(t, {1.0, 1.0}, false, true);
  CHECK(dx.same_shape(x));
  for (const Param* p : std::as_const(d).parameters()) {
    for (double g : p->grad) REQUIRE(g == 0.0);
  }
}

TEST_CASE("checkpoint round trip reproduces the generator exactly") {
  std::mt19937_64 rng(10);
  ModelCheckpoint ck{Generator(GeneratorSpec{3, 4, 32, 32}, rng), Discriminator(DiscriminatorSpec{3, 4, 2, 32, 32}, rng),
                     32, 0x1234abcdULL};
  ck.discriminator.refresh_spectral_estimates();
  testing::TempDir dir;
  save_checkpoint(ck, dir / "c.bin");
  const ModelCheckpoint back = load_checkpoint(dir / "c.bin");
  CHECK(back.gamma == 32);
  CHECK(back.config_digest == 0x1234abcdULL);
  CHECK(back.generator.spec() == ck.generator.spec());
  CHECK(back.discriminator.spec() == ck.discriminator.spec());
  const Tensor x = random_batch(2, 32, 32, rng);
  CHECK(back.generator.forward(x) == ck.generator.forward(x));
  CHECK(back.discriminator.forward(x) == ck.discriminator.forward(x));

  save_checkpoint(back, dir / "d.bin");
  CHECK(testing::read_file(dir / "c.bin") == testing::read_file(dir / "d.bin"));
  CHECK(checkpoint_file_digest(dir / "c.bin") == checkpoint_file_digest(dir / "d.bin"));
}

TEST_CASE("checkpoint load errors") {
  std::mt19937_64 rng(11);
  const ModelCheckpoint ck{Generator(GeneratorSpec{1, 2, 8, 8}, rng), Discriminator(DiscriminatorSpec{1, 2, 1, 8, 8}, rng),
                           4, 0};
  testing::TempDir dir;
  save_checkpoint(ck, dir / "c.bin");
  const std::string bytes = testing::read_file(dir / "c.bin");
  auto write = [&](const std::string& name, const std::string& content) {
    std::ofstream(dir / name, std::ios::binary) << content;
    return dir / name;
  };

  std::string wrong_version = bytes;
  wrong_version[8] = static_cast<char>(kCheckpointVersion + 1);
  CHECK_THROWS_AS(load_checkpoint(write("v.bin", wrong_version)), VersionError);

  std::string flipped = bytes;
  flipped[bytes.size() / 2] ^= 0x40;
  CHECK_THROWS_AS(load_checkpoint(write("f.bin", flipped)), FormatError);
  CHECK_THROWS_AS(load_checkpoint(write("t.bin", bytes.substr(0, bytes.size() - 5))), FormatError);
  CHECK_THROWS_AS(load_checkpoint(write("m.bin", "XXXXXXXX" + bytes.substr(8))), FormatError);
  CHECK_THROWS_AS(load_checkpoint(dir / "missing.bin"), IoError);
}
