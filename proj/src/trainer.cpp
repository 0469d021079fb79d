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

#include "inpaintseg/trainer.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>

#include "inpaintseg/adam.hpp"
#include "inpaintseg/losses.hpp"
#include "inpaintseg/masking.hpp"
#include "inpaintseg/normalize.hpp"

namespace inpaintseg {

void TrainConfig::validate(int width, int height) const {
  if (batch_size < 1) throw ValueError("batch_size must be >= 1");
  if (iterations < 0) throw ValueError("iterations must be >= 0");
  if (!(lr_g > 0.0) || !(lr_d > 0.0)) throw ValueError("learning rates must be positive");
  if (!(lambda_rec > 0.0) || !(lambda_adv > 0.0)) throw ValueError("loss weights must be positive");
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) throw ValueError("Adam betas must lie in [0, 1)");
  if (!(epsilon > 0.0)) throw ValueError("Adam epsilon must be positive");
  if (gamma < 1 || gamma > width || gamma > height) {
    throw ValueError("gamma " + std::to_string(gamma) + " does not fit " + std::to_string(width) + "x" +
                     std::to_string(height) + " slices");
  }
}

std::string TrainConfig::canonical() const {
  std::ostringstream os;
  os << std::setprecision(17) << "gamma=" << gamma << ";batch_size=" << batch_size << ";iterations=" << iterations
     << ";lr_g=" << lr_g << ";lr_d=" << lr_d << ";lambda_rec=" << lambda_rec << ";lambda_adv=" << lambda_adv
     << ";seed=" << seed << ";beta1=" << beta1 << ";beta2=" << beta2 << ";epsilon=" << epsilon;
  return os.str();
}

std::uint64_t TrainConfig::digest() const { return fnv1a64(canonical()); }

std::string TrainLog::to_csv() const {
  std::ostringstream os;
  os << "iteration,l_rec,l_adv,l_g,l_d\n" << std::setprecision(17);
  for (const auto& r : records) {
    os << r.iteration << ',' << r.l_rec << ',' << r.l_adv << ',' << r.l_g << ',' << r.l_d << '\n';
  }
  return os.str();
}

void TrainLog::write_csv(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << to_csv();
}

Tensor pack_batch(std::span<const Slice> slices) {
  if (slices.empty()) throw DimensionError("pack_batch: empty batch");
  const int w = slices[0].width();
  const int h = slices[0].height();
  Tensor t(static_cast<int>(slices.size()), 1, h, w);
  for (std::size_t i = 0; i < slices.size(); ++i) {
    if (slices[i].width() != w || slices[i].height() != h) throw DimensionError("pack_batch: mixed slice sizes");
    std::copy(slices[i].pixels().begin(), slices[i].pixels().end(), t.sample(static_cast<int>(i)));
  }
  return t;
}

Slice unpack_sample(const Tensor& t, int n) {
  std::vector<double> px(t.sample(n), t.sample(n) + t.plane());
  return Slice(t.w(), t.h(), std::move(px));
}

namespace {

bool clamped(double p) { return p <= kLogClamp || p >= 1.0 - kLogClamp; }

double sigmoid_of(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

GeneratorLossParts generator_objective_and_grad(Generator& g, Discriminator& d, const Tensor& masked,
                                                const Tensor& target, double lambda_rec, double lambda_adv) {
  GeneratorLossParts parts;
  Generator::Trace gt;
  parts.reconstruction = g.forward(masked, gt);
  parts.l_rec = reconstruction_loss(target, parts.reconstruction);

  Discriminator::Trace dt;
  const auto logits = d.forward_logits(parts.reconstruction, dt);
  std::vector<double> scores(logits.size());
  for (std::size_t i = 0; i < logits.size(); ++i) scores[i] = sigmoid_of(logits[i]);
  parts.l_adv = adversarial_loss_g(scores);
  parts.l_g = generator_objective(parts.l_rec, parts.l_adv, lambda_rec, lambda_adv);

  // d/dz log(1 - sigmoid(z)) = -sigmoid(z); zero inside the clamp.
  const double inv_b = 1.0 / static_cast<double>(logits.size());
  std::vector<double> dlogits(logits.size());
  for (std::size_t i = 0; i < logits.size(); ++i) {
    dlogits[i] = clamped(scores[i]) ? 0.0 : -lambda_adv * scores[i] * inv_b;
  }
  Tensor dx = d.backward(dt, dlogits, /*accumulate_params=*/false, /*need_dx=*/true);
  Tensor drec = reconstruction_loss_grad(target, parts.reconstruction);
  auto dv = dx.values();
  auto rv = drec.values();
  for (std::size_t i = 0; i < dv.size(); ++i) dv[i] += lambda_rec * rv[i];
  g.backward(gt, dx);
  return parts;
}

double discriminator_objective_and_grad(Discriminator& d, const Tensor& real, const Tensor& fake) {
  // Real and fake go through one pass so they share the same normalized weights.
  Tensor both(real.n() + fake.n(), 1, real.h(), real.w());
  std::copy(real.values().begin(), real.values().end(), both.data());
  std::copy(fake.values().begin(), fake.values().end(), both.data() + real.size());
  Discriminator::Trace dt;
  const auto logits = d.forward_logits(both, dt);
  std::vector<double> real_s(real.n()), fake_s(fake.n());
  for (int i = 0; i < real.n(); ++i) real_s[i] = sigmoid_of(logits[i]);
  for (int i = 0; i < fake.n(); ++i) fake_s[i] = sigmoid_of(logits[real.n() + i]);
  const double objective = discriminator_loss(real_s, fake_s);

  // Descend the negated objective.
  std::vector<double> dlogits(logits.size());
  const double inv_r = 1.0 / real.n();
  const double inv_f = 1.0 / fake.n();
  for (int i = 0; i < real.n(); ++i) dlogits[i] = clamped(real_s[i]) ? 0.0 : -(1.0 - real_s[i]) * inv_r;
  for (int i = 0; i < fake.n(); ++i) dlogits[real.n() + i] = clamped(fake_s[i]) ? 0.0 : fake_s[i] * inv_f;
  d.backward(dt, dlogits, /*accumulate_params=*/true, /*need_dx=*/false);
  return objective;
}

TrainResult train(std::span<const Slice> dataset, const GeneratorSpec& g_spec, const DiscriminatorSpec& d_spec,
                  const TrainConfig& cfg, const TrainHooks& hooks) {
  if (dataset.empty()) throw ValueError("training dataset is empty");
  const int w = dataset[0].width();
  const int h = dataset[0].height();
  if (g_spec.width != w || g_spec.height != h || d_spec.width != w || d_spec.height != h) {
    throw DimensionError("dataset slices are " + std::to_string(w) + "x" + std::to_string(h) +
                         " but the network expects " + std::to_string(g_spec.width) + "x" +
                         std::to_string(g_spec.height));
  }
  cfg.validate(w, h);

  std::vector<Slice> unit;
  unit.reserve(dataset.size());
  for (const Slice& s : dataset) {
    if (s.width() != w || s.height() != h) throw DimensionError("dataset slices must share dimensions");
    unit.push_back(to_unit_range(s));
  }

  std::mt19937_64 init_rng(cfg.seed);
  Generator gen(g_spec, init_rng);
  Discriminator disc(d_spec, init_rng);
  std::mt19937_64 data_rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<std::size_t> pick(0, unit.size() - 1);

  Adam opt_g(gen.parameters(), {cfg.lr_g, cfg.beta1, cfg.beta2, cfg.epsilon});
  Adam opt_d(disc.parameters(), {cfg.lr_d, cfg.beta1, cfg.beta2, cfg.epsilon});

  TrainLog log;
  log.records.reserve(cfg.iterations);
  std::vector<Slice> targets(cfg.batch_size);
  std::vector<Slice> masked(cfg.batch_size);
  for (int it = 0; it < cfg.iterations; ++it) {
    if (hooks.before_step) hooks.before_step(it, gen, disc);
    for (int b = 0; b < cfg.batch_size; ++b) {
      targets[b] = unit[pick(data_rng)];
      masked[b] = random_mask(targets[b], cfg.gamma, data_rng).first;
    }
    const Tensor x = pack_batch(targets);
    const Tensor xm = pack_batch(masked);

    opt_g.zero_grad();
    disc.refresh_spectral_estimates();
    GeneratorLossParts gp = generator_objective_and_grad(gen, disc, xm, x, cfg.lambda_rec, cfg.lambda_adv);
    opt_g.step();

    opt_d.zero_grad();
    disc.refresh_spectral_estimates();
    const double l_d = discriminator_objective_and_grad(disc, x, gp.reconstruction);
    opt_d.step();

    const TrainRecord rec{it, gp.l_rec, gp.l_adv, gp.l_g, l_d};
    if (!std::isfinite(rec.l_rec) || !std::isfinite(rec.l_adv) || !std::isfinite(rec.l_g) ||
        !std::isfinite(rec.l_d)) {
      throw DivergenceError("non-finite loss at iteration " + std::to_string(it), std::move(log));
    }
    log.records.push_back(rec);
    if (hooks.on_record) hooks.on_record(rec);
  }

  ModelCheckpoint ckpt{std::move(gen), std::move(disc), cfg.gamma, cfg.digest(), kCheckpointVersion};
  return {std::move(ckpt), std::move(log)};
}

}  // namespace inpaintseg
