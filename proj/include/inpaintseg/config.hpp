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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "inpaintseg/discriminator.hpp"
#include "inpaintseg/errors.hpp"
#include "inpaintseg/generator.hpp"
#include "inpaintseg/superpixel.hpp"
#include "inpaintseg/synth.hpp"
#include "inpaintseg/trainer.hpp"

namespace inpaintseg {

/// Bad flag, unknown config key or unparsable value.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Everything a command can be configured with. Each field is reachable both as a
/// config-file key and as a `--key` flag of the same name.
struct RunConfig {
  // shared
  std::uint64_t seed = 1;
  int workers = 1;
  std::string out = "out";
  std::string data;

  // synth
  int n_normal = 0;
  int n_anom = 0;
  std::optional<int> size;
  std::optional<int> width;
  std::optional<int> height;
  double radius_min = 6.0;
  double radius_max = 10.0;

  // train
  std::optional<int> gamma;
  int batch_size = 8;
  int iterations = 2000;
  double lr_g = 1e-4;
  double lr_d = 1e-3;
  double lambda_rec = 50.0;
  double lambda_adv = 1.0;
  double beta1 = 0.5;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  int g_depth = 4;
  int g_base_channels = 16;
  int d_depth = 4;
  int d_base_channels = 16;
  int sn_iters = 1;
  int log_every = 100;

  // segment
  std::string checkpoint;
  std::string input;
  int k = 4;
  double scale = 75.0;
  double smoothing_sigma = 0.8;
  int min_size = 20;
  int batch_windows = 16;
  std::string reconstructor = "generator";
  bool save_labels = false;

  // evaluate
  std::string mode = "segmentation";
  std::string pred_dir;

  static constexpr int kDefaultSize = 64;
  static constexpr int kDefaultGamma = 16;

  int resolved_width() const { return width.value_or(size.value_or(kDefaultSize)); }
  int resolved_height() const { return height.value_or(size.value_or(kDefaultSize)); }
  int resolved_gamma() const { return gamma.value_or(kDefaultGamma); }

  TrainConfig train_config() const;
  GeneratorSpec generator_spec() const;
  DiscriminatorSpec discriminator_spec() const;
  SegmentationParams segmentation_params() const;
  SynthSpec synth_spec() const;
};

struct ConfigKey {
  std::string name;
  std::string help;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

/// The single table of keys; flags are generated from it.
const std::vector<ConfigKey>& config_keys();

/// Applies one key (dashes and underscores are interchangeable). Throws UsageError.
void apply_config_value(RunConfig& cfg, const std::string& key, const std::string& value);

/// Flat `key = value` lines; '#' starts a comment.
void apply_config_file(RunConfig& cfg, const std::filesystem::path& path);
RunConfig load_config_file(const std::filesystem::path& path);

/// Every key with its current value, in table order, as a loadable config file.
std::string dump_config(const RunConfig& cfg);

}  // namespace inpaintseg
