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

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "inpaintseg/commands.hpp"
#include "inpaintseg/config.hpp"

namespace {

using inpaintseg::RunConfig;

struct Subcommand {
  CLI::App* app = nullptr;
  std::string config_path;
  std::map<std::string, std::string> values;
};

void add_keys(Subcommand& sub) {
  sub.app->add_option("--config", sub.config_path, "key=value config file; flags override it");
  const RunConfig defaults;
  for (const auto& key : inpaintseg::config_keys()) {
    const std::string flag = "--" + key.name;
    const std::string dflt = key.get(defaults);
    std::string& slot = sub.values[key.name];
    if (dflt == "true" || dflt == "false") {
      sub.app->add_flag(flag, slot, key.help)->default_str(dflt);
    } else {
      sub.app->add_option(flag, slot, key.help)->default_str(dflt);
    }
  }
}

RunConfig resolve(const Subcommand& sub) {
  RunConfig cfg;
  if (!sub.config_path.empty()) inpaintseg::apply_config_file(cfg, sub.config_path);
  for (const auto& key : inpaintseg::config_keys()) {
    if (sub.app->count("--" + key.name) > 0) inpaintseg::apply_config_value(cfg, key.name, sub.values.at(key.name));
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unsupervised anomaly segmentation by adversarial inpainting"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "inpaintseg 0.1.0");

  Subcommand synth{app.add_subcommand("synth", "Generate a synthetic slice dataset")};
  Subcommand train{app.add_subcommand("train", "Train the inpainting GAN on healthy slices")};
  Subcommand segment{app.add_subcommand("segment", "Localize and segment anomalies")};
  Subcommand evaluate{app.add_subcommand("evaluate", "Score predictions or healthy reconstructions")};
  for (Subcommand* s : {&synth, &train, &segment, &evaluate}) add_keys(*s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (synth.app->parsed()) {
      inpaintseg::cmd_synth(resolve(synth), std::cout);
    } else if (train.app->parsed()) {
      inpaintseg::cmd_train(resolve(train), std::cout);
    } else if (segment.app->parsed()) {
      inpaintseg::cmd_segment(resolve(segment), std::cout);
    } else if (evaluate.app->parsed()) {
      inpaintseg::cmd_evaluate(resolve(evaluate), std::cout);
    }
  } catch (const inpaintseg::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
