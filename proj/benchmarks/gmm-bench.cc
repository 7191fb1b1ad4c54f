// benchmarks/gmm-bench.cc

// Copyright 2026  VowelKit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "benchmark/benchmark.h"
#include "vowelkit/gmm.h"

namespace {

using namespace vowelkit;

GmmModel MakeModel(int m, int d, RandomStream* rng) {
  GmmModel model;
  model.dimension = d;
  for (int c = 0; c < m; ++c) {
    GaussianComponent comp;
    comp.weight = 1.0 / m;
    for (int k = 0; k < d; ++k) {
      comp.mean.push_back(rng->Gaussian());
      comp.variance.push_back(rng->Uniform(0.5, 1.5));
    }
    model.components.push_back(std::move(comp));
  }
  return model;
}

void BM_LogDensity(benchmark::State& state) {
  RandomStream rng(1);
  const GmmModel model = MakeModel(static_cast<int>(state.range(0)), 25, &rng);
  Vec x(25);
  for (double& v : x) v = rng.Gaussian();
  for (auto _ : state) {
    benchmark::DoNotOptimize(GmmLogDensity(model, x));
  }
}
BENCHMARK(BM_LogDensity)->Arg(8)->Arg(17)->Arg(80);

void BM_FitGmm(benchmark::State& state) {
  RandomStream rng(2);
  Rows data;
  for (int i = 0; i < 2000; ++i) {
    Vec x(25);
    for (double& v : x) v = rng.Gaussian(i % 4, 1.0);
    data.push_back(std::move(x));
  }
  const Vec weights(data.size(), 1.0);
  for (auto _ : state) {
    GmmTrainConfig config;
    config.seed = 3;
    config.max_iterations = 20;
    auto model = FitGmm(data, weights, 8, config);
    benchmark::DoNotOptimize(model);
  }
}
BENCHMARK(BM_FitGmm)->Unit(benchmark::kMillisecond);

}  // namespace
