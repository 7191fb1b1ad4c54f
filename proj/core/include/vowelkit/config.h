// core/include/vowelkit/config.h

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

#ifndef VOWELKIT_CONFIG_H_
#define VOWELKIT_CONFIG_H_

#include <optional>
#include <string>

#include "vowelkit/corpus.h"
#include "vowelkit/feature-extraction.h"
#include "vowelkit/fusion.h"
#include "vowelkit/gmm.h"
#include "vowelkit/svm.h"

namespace vowelkit {

struct GmmSectionConfig {
  int vowel_mixtures = 80;
  int nonvowel_mixtures = 170;
  int soft_context_frames = 2;
  double variance_floor = 1e-4;
  double tolerance = 1e-6;
  int max_iterations = 200;
  int kmeans_iterations = 10;

  GmmTrainConfig TrainConfig(uint64_t seed) const;
};

struct SvmSectionConfig {
  CvGrid grid;
  double tolerance = 1e-3;
  /// Caps for the full-kernel-cache solver; larger pools are subsampled
  /// deterministically (stratified by label).
  int max_training_frames = 3000;
  int cv_max_frames = 1200;
  bool report_ungated = true;
};

struct GatingSectionConfig {
  double target_ambiguous_fraction = 0.25;
  /// Empty = use training-set class frequencies.
  std::optional<std::pair<double, double>> priors;
};

struct RecognizerSectionConfig {
  int mixtures_per_vowel = 8;
  int min_segments_per_class = 10;
  bool use_pairwise_svm = false;
  int pairwise_max_frames = 400;
};

struct PipelineConfig {
  uint64_t seed = 20260810;
  DspConfig dsp;
  GmmSectionConfig gmm;
  SvmSectionConfig svm;
  GatingSectionConfig gating;
  FusionWeights fusion;
  DetectorConfig detector;
  RecognizerSectionConfig recognizer;
  CorpusConfig corpus;
  double train_fraction = 0.8;

  void Validate() const;
};

/// Full-scale defaults (mixture counts sized for a real speech corpus).
PipelineConfig DefaultConfig();

/// Desk-scale preset for the bundled synthetic corpus: mixture counts
/// scaled proportionally (80/170 -> 8/17); everything else as DefaultConfig.
PipelineConfig SyntheticDefaultConfig();

/// JSON round-trip ('//' comments are allowed on load).
PipelineConfig LoadConfig(const std::string& path);
void SaveConfig(const std::string& path, const PipelineConfig& config);
std::string ConfigToJson(const PipelineConfig& config);
PipelineConfig ConfigFromJson(const std::string& json_text);

/// Stable hash of the dsp section; a model bundle refuses to serve a
/// front-end configuration different from the one it was trained with.
std::string DspConfigHash(const DspConfig& config);

}  // namespace vowelkit

#endif  // VOWELKIT_CONFIG_H_
