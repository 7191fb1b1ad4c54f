// core/include/vowelkit/pipeline.h

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

#ifndef VOWELKIT_PIPELINE_H_
#define VOWELKIT_PIPELINE_H_

#include <map>
#include <string>
#include <vector>

#include "vowelkit/config.h"
#include "vowelkit/corpus.h"
#include "vowelkit/fusion.h"
#include "vowelkit/gating.h"
#include "vowelkit/recognizer.h"

namespace vowelkit {

/// An utterance after the front end: classifier rows, per-frame truth from
/// the labels (frame midpoints decide membership), and the truth vowel
/// segments as frame ranges.
struct AnalyzedUtterance {
  std::string id;
  std::vector<FeatureVector> features;
  Rows rows;                    // raw classifier rows
  std::vector<int> frame_vowel; // -1 outside vowels, else VowelClass index
  struct TruthSegment {
    int start_frame = 0;
    int end_frame = 0;  // exclusive
    VowelClass label = VowelClass::kA;
  };
  std::vector<TruthSegment> segments;
};

AnalyzedUtterance AnalyzeUtterance(const LabeledUtterance& utterance,
                                   const DspConfig& dsp);

/// Per-frame soft vowel membership for one utterance: 1 inside vowel cores,
/// raised-cosine taper over `context` frames, 0 elsewhere.
Vec SoftVowelWeights(const AnalyzedUtterance& utterance, int context);

struct TrainReport {
  int training_frames = 0;
  int svm_pool_frames = 0;
  int gated_frames = 0;
  int gated_support_vectors = 0;
  int ungated_support_vectors = 0;
  double chosen_c = 0.0;
  double chosen_sigma = 0.0;
  double cv_accuracy = 0.0;
  double epsilon = 0.0;
  double prior_vowel = 0.0;
  double gated_kkt = 0.0;
  double ungated_kkt = 0.0;

  std::string ToJson() const;
};

/// Everything the recognition side needs, plus the feature scaler the
/// models were trained in.
struct ModelBundle {
  FeatureScaler scaler;
  GatingModel gating;
  SvmModel svm;  // trained on the ambiguous subset, sigmoid attached
  std::map<VowelClass, GmmModel> vowel_models;
  std::map<std::pair<VowelClass, VowelClass>, SvmModel> pairwise_svms;
  std::string dsp_config_hash;
};

struct TrainOutput {
  ModelBundle bundle;
  TrainReport report;
  /// Scaled training rows with crisp labels, for the gating report.
  Rows scaled_rows;
  std::vector<int> frame_labels;
};

/// The full training flow: front end, global scaler, soft-weighted
/// detection GMMs, epsilon calibration, gated SVM with cross-validated
/// hyperparameters and held-out sigmoid calibration, per-vowel models.
TrainOutput TrainPipeline(const std::vector<LabeledUtterance>& training_set,
                          const PipelineConfig& config);

void SaveBundle(const std::string& dir, const ModelBundle& bundle);
ModelBundle LoadBundle(const std::string& dir);

/// Refuses a bundle trained under a different front-end configuration.
void CheckBundleCompatible(const ModelBundle& bundle, const DspConfig& dsp);

struct DetectionMetrics {
  int truth_segments = 0;
  int detected_segments = 0;
  /// Truth segments matched by a detection with both boundary errors
  /// within the tolerance.
  int hits = 0;
  /// Detected segments with no overlap with any truth vowel.
  int false_alarms = 0;
  int boundary_tolerance_frames = 2;

  double Recall() const {
    return truth_segments > 0 ? static_cast<double>(hits) / truth_segments : 0.0;
  }
};

struct EvaluationResult {
  ConfusionMatrix matrix;
  DetectionMetrics detection;
  std::string SummaryJson() const;
};

/// Classification over truth segments plus detection quality against the
/// truth boundaries.
EvaluationResult EvaluatePipeline(const ModelBundle& bundle,
                                  const std::vector<LabeledUtterance>& test_set,
                                  const PipelineConfig& config);

/// Detection + per-segment classification for one utterance.
DetectionResult DetectAndClassify(const ModelBundle& bundle,
                                  const LabeledUtterance& utterance,
                                  const PipelineConfig& config,
                                  bool classify);

DetectionMetrics MatchDetections(const std::vector<VowelSegment>& detected,
                                 const std::vector<AnalyzedUtterance::TruthSegment>& truth,
                                 int tolerance_frames);

}  // namespace vowelkit

#endif  // VOWELKIT_PIPELINE_H_
