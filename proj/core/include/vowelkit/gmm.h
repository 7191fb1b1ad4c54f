// core/include/vowelkit/gmm.h

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

#ifndef VOWELKIT_GMM_H_
#define VOWELKIT_GMM_H_

#include <optional>
#include <string>
#include <vector>

#include "vowelkit/common.h"

namespace vowelkit {

struct GaussianComponent {
  double weight = 1.0;
  Vec mean;
  Vec variance;  // diagonal covariance
};

/// Weighted diagonal-covariance Gaussian mixture.
struct GmmModel {
  std::vector<GaussianComponent> components;
  int dimension = 0;
  std::string class_label;
};

/// sum_m c_m N(x; mu_m, diag(var_m)).
double GmmDensity(const GmmModel& model, std::span<const double> x);

/// log of GmmDensity computed with log-sum-exp; finite for any finite x.
double GmmLogDensity(const GmmModel& model, std::span<const double> x);

struct GmmTrainConfig {
  int max_iterations = 200;
  double tolerance = 1e-6;       // relative log-likelihood improvement
  double variance_floor = 1e-4;  // per dimension
  int kmeans_iterations = 10;
  uint64_t seed = 0;
  /// When set, skips k-means++ seeding and starts EM from this model.
  std::optional<GmmModel> initial_model;
};

struct GmmTrainStats {
  /// Weighted log-likelihood recorded at every E-step of the kept
  /// parameter trajectory; non-decreasing.
  Vec log_likelihoods;
  int iterations = 0;
  bool converged = false;
  /// True when an iteration was rolled back because variance flooring
  /// produced a lower-likelihood iterate.
  bool reverted_on_decrease = false;
};

/// Weighted EM. frame_weights scale each row's sufficient statistics;
/// rows with zero weight are ignored entirely. Requires at least
/// num_components rows with strictly positive weight.
GmmModel FitGmm(const Rows& data, const Vec& frame_weights, int num_components,
                const GmmTrainConfig& config, GmmTrainStats* stats = nullptr,
                const std::string& class_label = "");

/// Per-frame weights for a segment [core_begin, core_end) plus a
/// raised-cosine taper over `context` frames on each side:
/// w = 0.5 * (1 + cos(pi*k/(context+1))) for the k-th context frame.
struct SoftSegmentWeights {
  int first_frame = 0;  // may be negative before clipping
  Vec weights;

  int EndFrame() const { return first_frame + static_cast<int>(weights.size()); }
};

SoftSegmentWeights MakeSoftSegmentWeights(int core_begin, int core_end,
                                          int context);

/// Logistic of the segment-mean log-likelihood ratio between the two
/// models; in (0, 1), monotone in the mean ratio.
double ConfidenceMeasure(const GmmModel& vowel_model,
                         const GmmModel& nonvowel_model, const Rows& segment);

}  // namespace vowelkit

#endif  // VOWELKIT_GMM_H_
