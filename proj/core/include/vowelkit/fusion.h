// core/include/vowelkit/fusion.h

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

#ifndef VOWELKIT_FUSION_H_
#define VOWELKIT_FUSION_H_

#include <optional>
#include <string>
#include <vector>

#include "vowelkit/common.h"
#include "vowelkit/feature-extraction.h"
#include "vowelkit/gating.h"
#include "vowelkit/svm.h"

namespace vowelkit {

/// Convex mixing weights for band-pass energy, GMM posterior and the
/// calibrated SVM posterior; must sum to 1.
struct FusionWeights {
  double energy = 0.3;
  double gmm = 0.5;
  double svm = 0.2;

  void Validate() const;
};

/// The three per-frame scores entering the fusion, each in [0, 1].
struct FrameScores {
  double bandpass_energy = 0.0;
  double gmm_posterior = 0.0;
  double svm_posterior = 0.0;
};

/// w_e*G + w_g*P_gmm + w_s*P_svm; in [0, 1] by convexity.
double VowelPosterior(const FrameScores& scores, const FusionWeights& weights);

/// Complement curve: exactly 1 - VowelPosterior, so the two curves cross
/// where either crosses 0.5.
double NonVowelPosterior(const FrameScores& scores,
                         const FusionWeights& weights);

struct DetectorConfig {
  int smoothing_frames = 3;  // centered moving average width
  double threshold = 0.5;
  int min_duration_frames = 3;
  int merge_gap_frames = 2;  // segments closer than this are merged
};

/// Detected vowel interval. Frame range is half-open; times span from the
/// start of the first frame to the end of the last.
struct VowelSegment {
  int start_frame = 0;
  int end_frame = 0;  // exclusive
  double start_time = 0.0;
  double end_time = 0.0;
  std::optional<int> label;  // vowel class index once classified
  double cm = 0.0;           // confidence measure

  int DurationFrames() const { return end_frame - start_frame; }
};

struct DetectionResult {
  std::vector<VowelSegment> segments;
  std::vector<FrameScores> frame_scores;
  Vec fused;     // vowel posterior per frame
  Vec smoothed;  // after the moving average
};

/// Computes the per-frame score triple: G from the feature vector, the
/// Bayes-normalized GMM posterior logistic(l - tau), and the sigmoid SVM
/// posterior. classifier_rows must already be in the model feature space.
std::vector<FrameScores> ScoreFrames(const std::vector<FeatureVector>& features,
                                     const Rows& classifier_rows,
                                     const GatingModel& gating,
                                     const SvmModel& svm);

/// Moving-average smoothing, thresholding at 0.5, minimum-duration pruning
/// and gap merging; each kept segment carries its confidence measure.
DetectionResult DetectVowelSegments(const std::vector<FeatureVector>& features,
                                    const Rows& classifier_rows,
                                    const GatingModel& gating,
                                    const SvmModel& svm,
                                    const FusionWeights& weights,
                                    const DetectorConfig& config,
                                    const DspConfig& dsp);

/// Segment extraction alone, for a precomputed posterior curve.
std::vector<VowelSegment> SegmentsFromCurve(const Vec& vowel_posterior,
                                            const DetectorConfig& config,
                                            const DspConfig& dsp);

Vec MovingAverage(const Vec& series, int width);

/// CSV rows: start_time_s, end_time_s, label, cm.
void WriteSegmentsCsv(const std::string& path,
                      const std::vector<VowelSegment>& segments,
                      const std::vector<std::string>& label_names);

/// CSV rows: frame, bandpass_energy, gmm_posterior, svm_posterior, fused.
void WriteCurveCsv(const std::string& path, const DetectionResult& result);

}  // namespace vowelkit

#endif  // VOWELKIT_FUSION_H_
