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

#include <algorithm>
#include <cmath>
#include <limits>

#include "inpaintseg/checkpoint.hpp"
#include "inpaintseg/losses.hpp"
#include "inpaintseg/masking.hpp"
#include "inpaintseg/synth.hpp"
#include "inpaintseg/trainer.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace inpaintseg;

namespace {

Tensor tensor_of(int w, int h, std::initializer_list<double> v) {
  Tensor t(1, 1, h, w);
  std::copy(v.begin(), v.end(), t.data());
  return t;
}

std::vector<Slice> tiny_dataset(int n, int size, std::uint64_t seed) {
  SynthSpec spec;
  spec.width = size;
  spec.height = size;
  spec.n_normal = n;
  spec.radius_min = 1;
  spec.radius_max = 2;
  std::mt19937_64 rng(seed);
  return gen_normal(spec, rng);
}

std::vector<double> flat(const std::vector<const Param*>& ps) {
  std::vector<double> out;
  for (const Param* p : ps) out.insert(out.end(), p->value.begin(), p->value.end());
  return out;
}

}  // namespace

TEST_CASE("reconstruction loss") {
  const Tensor x = tensor_of(2, 2, {0, 1, 1, 0});
  CHECK(reconstruction_loss(x, x) == 0.0);
  CHECK(reconstruction_loss(x, tensor_of(2, 2, {0, 0, 1, 1})) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(reconstruction_loss(x, Tensor(1, 1, 3, 3)), DimensionError);
}

TEST_CASE("adversarial loss for the generator") {
  const std::vector<double> half{0.5, 0.5, 0.5};
  CHECK(std::abs(adversarial_loss_g(half) - std::log(0.5)) < 1e-9);
  CHECK(std::abs(adversarial_loss_g(half) - -0.6931471805599453) < 1e-9);
  const std::vector<double> mixed{0.25, 0.75};
  CHECK(std::abs(adversarial_loss_g(mixed) - -0.8369882167858358) < 1e-9);
  const std::vector<double> fooled{1.0};
  CHECK(std::abs(adversarial_loss_g(fooled) - std::log(1e-7)) < 1e-9);
  CHECK(std::isfinite(adversarial_loss_g(fooled)));
}

TEST_CASE("generator objective") {
  CHECK(std::abs(generator_objective(0.1, -0.5, 50, 1) - 4.5) < 1e-9);
  CHECK(generator_objective(0, 0, 50, 1) == 0.0);
  CHECK(generator_objective(0.37, -2.0, 50, 0) == 50 * 0.37);
}

TEST_CASE("discriminator loss") {
  const std::vector<double> half{0.5, 0.5};
  CHECK(std::abs(discriminator_loss(half, half) - -1.3862943611198906) < 1e-9);
  const std::vector<double> r{1 - 1e-7}, f{1e-7};
  CHECK(std::abs(discriminator_loss(r, f)) < 1e-6);
  const std::vector<double> r9{0.9}, f1{0.1};
  CHECK(std::abs(discriminator_loss(r9, f1) - -0.21072103131565253) < 1e-9);
  const std::vector<double> saturated{1.0}, zero{0.0};
  CHECK(std::isfinite(discriminator_loss(zero, saturated)));
}

TEST_CASE("generator objective gradient matches central differences") {
  const auto coarse = oracles::generator_gradient_agreement(1e-4);
  MESSAGE(coarse.good << " of " << coarse.total << " parameters agree at step 1e-4");
  CHECK(coarse.total > 200);
  CHECK(coarse.fraction() >= 0.95);
  // Stragglers at a coarse step come from steps that straddle an L1 or leaky-ReLU kink.
  const auto fine = oracles::generator_gradient_agreement(1e-6);
  CHECK(fine.good == fine.total);
}

TEST_CASE("discriminator objective gradient matches central differences") {
  std::mt19937_64 rng(2);
  Discriminator d(DiscriminatorSpec{2, 3, 1, 8, 8}, rng);
  d.refresh_spectral_estimates();
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Tensor real(3, 1, 8, 8), fake(3, 1, 8, 8);
  for (double& v : real.values()) v = u(rng);
  for (double& v : fake.values()) v = u(rng);
  d.zero_grad();
  discriminator_objective_and_grad(d, real, fake);
  const Discriminator& cd = d;
  auto neg_objective = [&] { return -discriminator_loss(cd.forward(real), cd.forward(fake)); };
  const double h = 1e-5;
  for (Param* p : d.parameters()) {
    for (std::size_t i = 0; i < p->size(); ++i) {
      const double keep = p->value[i];
      p->value[i] = keep + h;
      const double up = neg_objective();
      p->value[i] = keep - h;
      const double down = neg_objective();
      p->value[i] = keep;
      CHECK(p->grad[i] == doctest::Approx((up - down) / (2 * h)).epsilon(1e-5).scale(1.0));
    }
  }
}

TEST_CASE("zero iterations returns the initialization and an empty log") {
  const auto data = tiny_dataset(4, 16, 3);
  TrainConfig cfg;
  cfg.gamma = 4;
  cfg.batch_size = 2;
  cfg.iterations = 0;
  cfg.seed = 42;
  const GeneratorSpec gs{2, 4, 16, 16};
  const DiscriminatorSpec ds{2, 4, 1, 16, 16};
  const TrainResult r = train(data, gs, ds, cfg);
  CHECK(r.log.records.empty());
  CHECK(r.log.to_csv() == "iteration,l_rec,l_adv,l_g,l_d\n");
  std::mt19937_64 rng(42);
  const Generator g(gs, rng);
  const Discriminator d(ds, rng);
  CHECK(flat(r.checkpoint.generator.parameters()) == flat(g.parameters()));
  CHECK(flat(r.checkpoint.discriminator.parameters()) == flat(d.parameters()));
  CHECK(r.checkpoint.gamma == 4);
  CHECK(r.checkpoint.config_digest == cfg.digest());
}

TEST_CASE("training is deterministic and reduces the reconstruction loss") {
  const auto data = tiny_dataset(8, 16, 4);
  TrainConfig cfg;
  cfg.gamma = 4;
  cfg.batch_size = 4;
  cfg.iterations = 60;
  cfg.lr_g = 2e-3;
  const GeneratorSpec gs{2, 8, 16, 16};
  const DiscriminatorSpec ds{2, 4, 1, 16, 16};
  const TrainResult a = train(data, gs, ds, cfg);
  const TrainResult b = train(data, gs, ds, cfg);
  REQUIRE(a.log.records.size() == 60);
  CHECK(a.log.to_csv() == b.log.to_csv());
  CHECK(flat(a.checkpoint.generator.parameters()) == flat(b.checkpoint.generator.parameters()));

  double first = 0.0, last = 0.0;
  for (int i = 0; i < 10; ++i) {
    first += a.log.records[i].l_rec;
    last += a.log.records[50 + i].l_rec;
  }
  CHECK(last < first);

  cfg.seed = 2;
  CHECK(train(data, gs, ds, cfg).log.to_csv() != a.log.to_csv());
}

TEST_CASE("non-finite loss aborts with the partial log") {
  const auto data = tiny_dataset(4, 16, 5);
  TrainConfig cfg;
  cfg.gamma = 4;
  cfg.batch_size = 2;
  cfg.iterations = 10;
  TrainHooks hooks;
  hooks.before_step = [](int it, Generator& g, Discriminator&) {
    if (it == 3) g.parameters().back()->value[0] = std::numeric_limits<double>::quiet_NaN();
  };
  try {
    train(data, GeneratorSpec{2, 4, 16, 16}, DiscriminatorSpec{2, 4, 1, 16, 16}, cfg, hooks);
    FAIL("expected DivergenceError");
  } catch (const DivergenceError& e) {
    CHECK(e.partial_log().records.size() == 3);
    CHECK(std::string(e.what()).find("iteration 3") != std::string::npos);
  }
}

TEST_CASE("train config validation") {
  TrainConfig cfg;
  cfg.gamma = 65;
  CHECK_THROWS_AS(cfg.validate(64, 64), ValueError);
  cfg.gamma = 16;
  cfg.batch_size = 0;
  CHECK_THROWS_AS(cfg.validate(64, 64), ValueError);
  cfg.batch_size = 1;
  cfg.iterations = -1;
  CHECK_THROWS_AS(cfg.validate(64, 64), ValueError);
  cfg.iterations = 1;
  cfg.lr_g = 0.0;
  CHECK_THROWS_AS(cfg.validate(64, 64), ValueError);
}

TEST_CASE("train rejects mismatched dimensions") {
  const auto data = tiny_dataset(2, 16, 6);
  TrainConfig cfg;
  cfg.gamma = 4;
  CHECK_THROWS_AS(train(data, GeneratorSpec{2, 4, 32, 32}, DiscriminatorSpec{2, 4, 1, 32, 32}, cfg), DimensionError);
  CHECK_THROWS_AS(train({}, GeneratorSpec{2, 4, 16, 16}, DiscriminatorSpec{2, 4, 1, 16, 16}, cfg), ValueError);
}

TEST_CASE("train log CSV format") {
  TrainLog log;
  log.records.push_back({0, 0.5, -0.25, 24.75, -1.5});
  CHECK(log.to_csv() == "iteration,l_rec,l_adv,l_g,l_d\n0,0.5,-0.25,24.75,-1.5\n");
}
