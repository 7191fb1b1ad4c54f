// core/src/fusion.cc

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

#include "vowelkit/fusion.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace vowelkit {

void FusionWeights::Validate() const {
  Require(energy >= 0.0 && energy <= 1.0 && gmm >= 0.0 && gmm <= 1.0 &&
              svm >= 0.0 && svm <= 1.0,
          "fusion: weights must lie in [0, 1]");
  Require(std::abs(energy + gmm + svm - 1.0) <= 1e-12,
          "fusion: weights must sum to 1");
}

double VowelPosterior(const FrameScores& scores, const FusionWeights& weights) {
  return weights.energy * scores.bandpass_energy +
         weights.gmm * scores.gmm_posterior +
         weights.svm * scores.svm_posterior;
}

double NonVowelPosterior(const FrameScores& scores,
                         const FusionWeights& weights) {
  // Computed as the literal complement so the identity
  // VowelPosterior + NonVowelPosterior == 1 holds exactly.
  return 1.0 - VowelPosterior(scores, weights);
}

std::vector<FrameScores> ScoreFrames(const std::vector<FeatureVector>& features,
                                     const Rows& classifier_rows,
                                     const GatingModel& gating,
                                     const SvmModel& svm) {
  Require(features.size() == classifier_rows.size(),
          "score_frames: feature/row count mismatch");
  const double tau = gating.Tau();
  std::vector<FrameScores> scores(features.size());
  for (size_t t = 0; t < features.size(); ++t) {
    FrameScores& s = scores[t];
    s.bandpass_energy = features[t].bandpass_energy;
    // P1 p1 / (P1 p1 + P2 p2) = logistic(l - tau), evaluated in log space.
    s.gmm_posterior = Logistic(LogLikelihoodRatio(gating, classifier_rows[t]) - tau);
    const double f = DecisionValue(svm, classifier_rows[t]);
    s.svm_posterior = svm.platt.has_value() ? PlattPosterior(*svm.platt, f)
                                            : Logistic(f);
  }
  return scores;
}

Vec MovingAverage(const Vec& series, int width) {
  Require(width >= 1, "moving_average: width must be >= 1");
  const int n = static_cast<int>(series.size());
  const int half = width / 2;
  Vec out(series.size());
  for (int t = 0; t < n; ++t) {
    const int lo = std::max(0, t - half);
    const int hi = std::min(n - 1, t + half);
    double acc = 0.0;
    for (int i = lo; i <= hi; ++i) acc += series[i];
    out[t] = acc / (hi - lo + 1);
  }
  return out;
}

std::vector<VowelSegment> SegmentsFromCurve(const Vec& vowel_posterior,
                                            const DetectorConfig& config,
                                            const DspConfig& dsp) {
  Require(!vowel_posterior.empty(), "detect_segments: empty curve");
  const Vec smoothed = MovingAverage(vowel_posterior, config.smoothing_frames);

  std::vector<std::pair<int, int>> runs;
  int start = -1;
  for (int t = 0; t < static_cast<int>(smoothed.size()); ++t) {
    if (smoothed[t] > config.threshold) {
      if (start < 0) start = t;
    } else if (start >= 0) {
      runs.emplace_back(start, t);
      start = -1;
    }
  }
  if (start >= 0) runs.emplace_back(start, static_cast<int>(smoothed.size()));

  std::vector<std::pair<int, int>> kept;
  for (auto [b, e] : runs)
    if (e - b >= config.min_duration_frames) kept.emplace_back(b, e);

  std::vector<std::pair<int, int>> merged;
  for (auto [b, e] : kept) {
    if (!merged.empty() && b - merged.back().second < config.merge_gap_frames) {
      merged.back().second = e;
    } else {
      merged.emplace_back(b, e);
    }
  }

  std::vector<VowelSegment> segments;
  const double rate = dsp.sample_rate;
  for (auto [b, e] : merged) {
    VowelSegment seg;
    seg.start_frame = b;
    seg.end_frame = e;
    seg.start_time = b * dsp.frame_shift / rate;
    seg.end_time = ((e - 1) * dsp.frame_shift + dsp.frame_length) / rate;
    segments.push_back(seg);
  }
  return segments;
}

DetectionResult DetectVowelSegments(const std::vector<FeatureVector>& features,
                                    const Rows& classifier_rows,
                                    const GatingModel& gating,
                                    const SvmModel& svm,
                                    const FusionWeights& weights,
                                    const DetectorConfig& config,
                                    const DspConfig& dsp) {
  weights.Validate();
  Require(!features.empty(), "detect_segments: need at least one frame");

  DetectionResult result;
  result.frame_scores = ScoreFrames(features, classifier_rows, gating, svm);
  result.fused.resize(features.size());
  for (size_t t = 0; t < features.size(); ++t)
    result.fused[t] = VowelPosterior(result.frame_scores[t], weights);
  result.smoothed = MovingAverage(result.fused, config.smoothing_frames);
  result.segments = SegmentsFromCurve(result.fused, config, dsp);

  for (VowelSegment& seg : result.segments) {
    Rows segment_rows(classifier_rows.begin() + seg.start_frame,
                      classifier_rows.begin() + seg.end_frame);
    seg.cm = ConfidenceMeasure(gating.vowel, gating.nonvowel, segment_rows);
  }
  return result;
}

void WriteSegmentsCsv(const std::string& path,
                      const std::vector<VowelSegment>& segments,
                      const std::vector<std::string>& label_names) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("segments csv: cannot write " + path);
  out << "start_time_s,end_time_s,label,cm\n";
  char buf[96];
  for (const VowelSegment& seg : segments) {
    std::string name = "unlabeled";
    if (seg.label.has_value() &&
        *seg.label < static_cast<int>(label_names.size()))
      name = label_names[*seg.label];
    std::snprintf(buf, sizeof buf, "%.6f,%.6f,%s,%.6f\n", seg.start_time,
                  seg.end_time, name.c_str(), seg.cm);
    out << buf;
  }
}

void WriteCurveCsv(const std::string& path, const DetectionResult& result) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("curve csv: cannot write " + path);
  out << "frame,bandpass_energy,gmm_posterior,svm_posterior,fused,smoothed\n";
  char buf[160];
  for (size_t t = 0; t < result.fused.size(); ++t) {
    const FrameScores& s = result.frame_scores[t];
    std::snprintf(buf, sizeof buf, "%zu,%.9g,%.9g,%.9g,%.9g,%.9g\n", t,
                  s.bandpass_energy, s.gmm_posterior, s.svm_posterior,
                  result.fused[t], result.smoothed[t]);
    out << buf;
  }
}

}  // namespace vowelkit
