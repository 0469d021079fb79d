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

#include "inpaintseg/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace inpaintseg {

TrainConfig RunConfig::train_config() const {
  TrainConfig t;
  t.gamma = resolved_gamma();
  t.batch_size = batch_size;
  t.iterations = iterations;
  t.lr_g = lr_g;
  t.lr_d = lr_d;
  t.lambda_rec = lambda_rec;
  t.lambda_adv = lambda_adv;
  t.seed = seed;
  t.beta1 = beta1;
  t.beta2 = beta2;
  t.epsilon = epsilon;
  return t;
}

GeneratorSpec RunConfig::generator_spec() const {
  return {g_depth, g_base_channels, resolved_width(), resolved_height()};
}

DiscriminatorSpec RunConfig::discriminator_spec() const {
  return {d_depth, d_base_channels, sn_iters, resolved_width(), resolved_height()};
}

SegmentationParams RunConfig::segmentation_params() const { return {scale, smoothing_sigma, min_size}; }

SynthSpec RunConfig::synth_spec() const {
  return {resolved_width(), resolved_height(), n_normal, n_anom, radius_min, radius_max, seed};
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T v{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw UsageError("invalid value '" + text + "' for " + key);
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw UsageError("invalid boolean '" + text + "' for " + key);
}

// Shortest text that parses back to the same double.
std::string format_double(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

template <typename T>
ConfigKey number_key(std::string name, std::string help, T RunConfig::*member) {
  return {name, std::move(help),
          [member, name](RunConfig& c, const std::string& v) { c.*member = parse_number<T>(name, v); },
          [member](const RunConfig& c) {
            if constexpr (std::is_floating_point_v<T>) {
              return format_double(c.*member);
            } else {
              return std::to_string(c.*member);
            }
          }};
}

ConfigKey optional_int_key(std::string name, std::string help, std::optional<int> RunConfig::*member) {
  return {name, std::move(help),
          [member, name](RunConfig& c, const std::string& v) { c.*member = parse_number<int>(name, v); },
          [member](const RunConfig& c) { return (c.*member) ? std::to_string(*(c.*member)) : std::string(); }};
}

ConfigKey string_key(std::string name, std::string help, std::string RunConfig::*member,
                     std::vector<std::string> choices = {}) {
  return {name, std::move(help),
          [member, name, choices](RunConfig& c, const std::string& v) {
            if (!choices.empty() && std::find(choices.begin(), choices.end(), v) == choices.end()) {
              throw UsageError("invalid value '" + v + "' for " + name);
            }
            c.*member = v;
          },
          [member](const RunConfig& c) { return c.*member; }};
}

ConfigKey bool_key(std::string name, std::string help, bool RunConfig::*member) {
  return {name, std::move(help), [member, name](RunConfig& c, const std::string& v) { c.*member = parse_bool(name, v); },
          [member](const RunConfig& c) { return std::string(c.*member ? "true" : "false"); }};
}

std::vector<ConfigKey> make_keys() {
  using R = RunConfig;
  return {
      number_key("seed", "random seed", &R::seed),
      number_key("workers", "OpenMP worker threads (1 = bit-exact reference mode)", &R::workers),
      string_key("out", "output directory", &R::out),
      string_key("data", "dataset directory holding manifest.txt", &R::data),
      number_key("n-normal", "healthy slices to synthesize", &R::n_normal),
      number_key("n-anom", "anomalous slices to synthesize", &R::n_anom),
      optional_int_key("size", "square slice size (sets width and height)", &R::size),
      optional_int_key("width", "slice width in pixels", &R::width),
      optional_int_key("height", "slice height in pixels", &R::height),
      number_key("radius-min", "smallest synthetic anomaly radius", &R::radius_min),
      number_key("radius-max", "largest synthetic anomaly radius", &R::radius_max),
      optional_int_key("gamma", "mask window side length", &R::gamma),
      number_key("batch-size", "training minibatch size", &R::batch_size),
      number_key("iterations", "training iterations", &R::iterations),
      number_key("lr-g", "generator learning rate", &R::lr_g),
      number_key("lr-d", "discriminator learning rate", &R::lr_d),
      number_key("lambda-rec", "reconstruction loss weight", &R::lambda_rec),
      number_key("lambda-adv", "adversarial loss weight", &R::lambda_adv),
      number_key("beta1", "Adam first-moment decay", &R::beta1),
      number_key("beta2", "Adam second-moment decay", &R::beta2),
      number_key("epsilon", "Adam epsilon", &R::epsilon),
      number_key("g-depth", "generator down/up-sampling stages", &R::g_depth),
      number_key("g-base-channels", "generator channels at the first stage", &R::g_base_channels),
      number_key("d-depth", "discriminator convolution stages", &R::d_depth),
      number_key("d-base-channels", "discriminator channels at the first stage", &R::d_base_channels),
      number_key("sn-iters", "power iterations per discriminator training pass", &R::sn_iters),
      number_key("log-every", "training progress interval (0 = quiet)", &R::log_every),
      string_key("checkpoint", "model checkpoint path", &R::checkpoint),
      string_key("input", "single slice to segment", &R::input),
      number_key("k", "sliding-window step in pixels", &R::k),
      number_key("scale", "superpixel scale parameter", &R::scale),
      number_key("smoothing-sigma", "superpixel Gaussian pre-smoothing", &R::smoothing_sigma),
      number_key("min-size", "smallest superpixel in pixels", &R::min_size),
      number_key("batch-windows", "windows reconstructed per network call", &R::batch_windows),
      string_key("reconstructor", "generator, or identity (zero-loss test oracle)", &R::reconstructor,
                 {"generator", "identity"}),
      bool_key("save-labels", "also write 16-bit superpixel label PNGs", &R::save_labels),
      string_key("mode", "evaluate mode: segmentation or healthy", &R::mode, {"segmentation", "healthy"}),
      string_key("pred-dir", "directory with <stem>_pred.png predictions", &R::pred_dir),
  };
}

std::string canonical_key(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return key;
}

}  // namespace

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = make_keys();
  return keys;
}

void apply_config_value(RunConfig& cfg, const std::string& key, const std::string& value) {
  const std::string name = canonical_key(trim(key));
  for (const auto& k : config_keys()) {
    if (k.name == name) {
      k.set(cfg, trim(value));
      return;
    }
  }
  throw UsageError("unknown config key '" + key + "'");
}

void apply_config_file(RunConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path.string());
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path.string() + ":" + std::to_string(lineno) + ": expected key = value");
    }
    apply_config_value(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
}

RunConfig load_config_file(const std::filesystem::path& path) {
  RunConfig cfg;
  apply_config_file(cfg, path);
  return cfg;
}

std::string dump_config(const RunConfig& cfg) {
  std::ostringstream os;
  for (const auto& k : config_keys()) {
    const std::string v = k.get(cfg);
    if (v.empty()) continue;
    os << k.name << " = " << v << '\n';
  }
  return os.str();
}

}  // namespace inpaintseg
