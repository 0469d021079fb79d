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

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "inpaintseg/checkpoint.hpp"
#include "inpaintseg/slice.hpp"

namespace inpaintseg {

struct TrainConfig {
  int gamma = 16;
  int batch_size = 8;
  int iterations = 2000;
  double lr_g = 1e-4;
  double lr_d = 1e-3;
  double lambda_rec = 50.0;
  double lambda_adv = 1.0;
  std::uint64_t seed = 1;
  double beta1 = 0.5;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  /// Throws ValueError for non-positive rates/weights, empty batches or a gamma that
  /// does not fit `width` x `height`.
  void validate(int width, int height) const;
  /// Stable textual form, the input of digest().
  std::string canonical() const;
  std::uint64_t digest() const;
};

struct TrainRecord {
  int iteration = 0;
  double l_rec = 0.0;
  double l_adv = 0.0;
  double l_g = 0.0;
  double l_d = 0.0;
};

struct TrainLog {
  std::vector<TrainRecord> records;

  /// Header "iteration,l_rec,l_adv,l_g,l_d", values with 17 significant digits.
  std::string to_csv() const;
  void write_csv(const std::filesystem::path& path) const;
};

/// Raised when a loss becomes non-finite; carries the records logged so far.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, TrainLog partial) : Error(what), partial_(std::move(partial)) {}
  const TrainLog& partial_log() const { return partial_; }

 private:
  TrainLog partial_;
};

struct TrainHooks {
  /// Runs before each iteration's updates; tests use it to inject faults.
  std::function<void(int iteration, Generator&, Discriminator&)> before_step;
  std::function<void(const TrainRecord&)> on_record;
};

struct TrainResult {
  ModelCheckpoint checkpoint;
  TrainLog log;
};

struct GeneratorLossParts {
  double l_rec = 0.0;
  double l_adv = 0.0;
  double l_g = 0.0;
  Tensor reconstruction;
};

/// Evaluates the generator objective on one batch and accumulates its gradient
/// into the generator's parameters (the discriminator's parameters are untouched).
GeneratorLossParts generator_objective_and_grad(Generator& g, Discriminator& d, const Tensor& masked,
                                                const Tensor& target, double lambda_rec, double lambda_adv);

/// Evaluates the discriminator objective (ascended) and accumulates the gradient of
/// its negation into the discriminator's parameters. Returns the objective value.
double discriminator_objective_and_grad(Discriminator& d, const Tensor& real, const Tensor& fake);

/// Adversarial inpainting training on healthy slices with intensities in [0, 255].
TrainResult train(std::span<const Slice> dataset, const GeneratorSpec& g_spec, const DiscriminatorSpec& d_spec,
                  const TrainConfig& cfg, const TrainHooks& hooks = {});

/// Packs slices (already in unit range) into an Nx1xHxW tensor.
Tensor pack_batch(std::span<const Slice> slices);
Slice unpack_sample(const Tensor& t, int n);

}  // namespace inpaintseg
