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

#include <benchmark/benchmark.h>
#include <omp.h>

#include <random>

#include "inpaintseg/generator.hpp"
#include "inpaintseg/kernels.hpp"

namespace {

using namespace inpaintseg;

struct ConvCase {
  ConvGeometry g;
  int n, h, w;
};

// Layers of the desk-scale generator and discriminator (base 16, 64x64 input, batch 8).
const ConvCase kCases[] = {
    {{1, 16, 4, 2, 1}, 8, 64, 64},
    {{16, 32, 4, 2, 1}, 8, 32, 32},
    {{64, 32, 3, 1, 1}, 8, 16, 16},
    {{33, 16, 3, 1, 1}, 8, 64, 64},
};

struct ConvData {
  Tensor x, dy;
  std::vector<double> w, b, dw, db;
  Tensor dx;
};

ConvData make_data(const ConvCase& c) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> nd(0.0, 1.0);
  ConvData d;
  d.x = Tensor(c.n, c.g.in_c, c.h, c.w);
  for (double& v : d.x.values()) v = nd(rng);
  d.w.resize(c.g.weight_size());
  for (double& v : d.w) v = nd(rng);
  d.b.assign(c.g.out_c, 0.1);
  d.dy = Tensor(c.n, c.g.out_c, c.g.out_h(c.h), c.g.out_w(c.w));
  for (double& v : d.dy.values()) v = nd(rng);
  d.dw.assign(d.w.size(), 0.0);
  d.db.assign(d.b.size(), 0.0);
  d.dx = Tensor(c.n, c.g.in_c, c.h, c.w);
  return d;
}

void set_flops(benchmark::State& state, const ConvCase& c, double passes) {
  const double macs = static_cast<double>(c.n) * c.g.out_c * c.g.out_h(c.h) * c.g.out_w(c.w) * c.g.patch();
  state.counters["GFLOP/s"] =
      benchmark::Counter(2.0 * macs * passes * state.iterations(), benchmark::Counter::kIsRate, benchmark::Counter::kIs1000);
}

void BM_ConvForwardReference(benchmark::State& state) {
  const ConvCase& c = kCases[state.range(0)];
  ConvData d = make_data(c);
  for (auto _ : state) benchmark::DoNotOptimize(reference::conv2d_forward(d.x, d.w, d.b, c.g));
  set_flops(state, c, 1.0);
}

void BM_ConvForward(benchmark::State& state) {
  const ConvCase& c = kCases[state.range(0)];
  omp_set_num_threads(static_cast<int>(state.range(1)));
  ConvData d = make_data(c);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::conv2d_forward(d.x, d.w, d.b, c.g));
  set_flops(state, c, 1.0);
}

void BM_ConvBackwardReference(benchmark::State& state) {
  const ConvCase& c = kCases[state.range(0)];
  ConvData d = make_data(c);
  for (auto _ : state) {
    reference::conv2d_backward(d.x, d.w, d.dy, c.g, d.dw, d.db, &d.dx);
    benchmark::ClobberMemory();
  }
  set_flops(state, c, 2.0);
}

void BM_ConvBackward(benchmark::State& state) {
  const ConvCase& c = kCases[state.range(0)];
  omp_set_num_threads(static_cast<int>(state.range(1)));
  ConvData d = make_data(c);
  for (auto _ : state) {
    kernels::conv2d_backward(d.x, d.w, d.dy, c.g, d.dw, d.db, &d.dx);
    benchmark::ClobberMemory();
  }
  set_flops(state, c, 2.0);
}

void thread_args(benchmark::internal::Benchmark* b) {
  const int max_threads = omp_get_num_procs();
  for (int i = 0; i < 4; ++i) {
    for (int t = 1; t <= max_threads; t *= 2) b->Args({i, t});
  }
}

void BM_GeneratorForward(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const Generator g(GeneratorSpec{4, 16, 64, 64}, rng);
  const Tensor x(static_cast<int>(state.range(0)), 1, 64, 64, 0.5);
  omp_set_num_threads(omp_get_num_procs());
  for (auto _ : state) benchmark::DoNotOptimize(g.forward(x));
}

}  // namespace

BENCHMARK(BM_ConvForwardReference)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConvForward)->Apply(thread_args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConvBackwardReference)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConvBackward)->Apply(thread_args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GeneratorForward)->Arg(1)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
