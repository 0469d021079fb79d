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

#include <vector>

#include "inpaintseg/layers.hpp"

namespace inpaintseg {

struct AdamOptions {
  double lr = 1e-4;
  double beta1 = 0.5;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// Adaptive moment estimation with bias correction. Descends the accumulated gradients.
class Adam {
 public:
  Adam(std::vector<Param*> params, AdamOptions options);

  void step();
  void zero_grad();
  long steps() const { return t_; }

 private:
  std::vector<Param*> params_;
  std::vector<std::vector<double>> m_;
  std::vector<std::vector<double>> v_;
  AdamOptions opt_;
  long t_ = 0;
};

}  // namespace inpaintseg
