// benchmarks/dsp-bench.cc

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

#include <cmath>

#include "benchmark/benchmark.h"
#include "vowelkit/feature-extraction.h"

namespace {

using namespace vowelkit;

AudioBuffer OneSecondTone() {
  AudioBuffer audio;
  audio.samples.resize(8000);
  for (int t = 0; t < 8000; ++t)
    audio.samples[t] = 0.4 * std::sin(2.0 * kPi * 700.0 * t / 8000.0);
  return audio;
}

void BM_ExtractFeatures(benchmark::State& state) {
  const AudioBuffer audio = OneSecondTone();
  const DspConfig config;
  for (auto _ : state) {
    auto features = ExtractFeatures(audio, config);
    benchmark::DoNotOptimize(features);
  }
  state.SetItemsProcessed(state.iterations() * 79);  // frames per second
}
BENCHMARK(BM_ExtractFeatures);

void BM_BandPassEnergy(benchmark::State& state) {
  const AudioBuffer audio = OneSecondTone();
  const DspConfig config;
  const Vec frame(audio.samples.begin(), audio.samples.begin() + 200);
  for (auto _ : state) {
    benchmark::DoNotOptimize(BandPassEnergy(frame, config));
  }
}
BENCHMARK(BM_BandPassEnergy);

}  // namespace
