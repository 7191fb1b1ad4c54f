// core/include/vowelkit/gating.h

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

#ifndef VOWELKIT_GATING_H_
#define VOWELKIT_GATING_H_

#include <string>
#include <vector>

#include "vowelkit/common.h"
#include "vowelkit/gmm.h"

namespace vowelkit {

/// Vowel/non-vowel likelihood-ratio gate. Frames with |l - tau| <= epsilon
/// are ambiguous and are the ones routed to the discriminative classifier.
struct GatingModel {
  GmmModel vowel;
  GmmModel nonvowel;
  double prior_vowel = 0.5;
  double prior_nonvowel = 0.5;
  double epsilon = 0.0;

  /// Decision threshold log(P_nonvowel / P_vowel).
  double Tau() const;

  /// Normalizes a pair of unnormalized priors onto the model.
  void SetPriors(double unnormalized_vowel, double unnormalized_nonvowel);
};

enum class GateDecision { kAcceptVowel, kAcceptNonVowel, kAmbiguous };

std::string ToString(GateDecision decision);

struct GateResult {
  GateDecision decision = GateDecision::kAmbiguous;
  double score = 0.0;  // l(x)
};

/// l(x) = log P(x|vowel) - log P(x|nonvowel), in log space throughout.
double LogLikelihoodRatio(const GatingModel& model, std::span<const double> x);

/// AcceptVowel when l > tau + eps, AcceptNonVowel when l < tau - eps,
/// Ambiguous otherwise.
GateResult Gate(const GatingModel& model, std::span<const double> x);

struct GatedSelection {
  Rows rows;
  std::vector<int> labels;
  std::vector<size_t> indices;  // positions in the input set
};

/// The rows gated Ambiguous; errors when none are (suggesting a larger
/// epsilon), since an empty selection cannot train a classifier.
GatedSelection SelectAmbiguousTrainingSet(const GatingModel& model,
                                          const Rows& rows,
                                          const std::vector<int>& labels);

/// Smallest epsilon (bisection to 1e-4) whose ambiguous fraction over the
/// validation rows reaches target_fraction in (0, 1].
double CalibrateEpsilon(const GatingModel& model, const Rows& validation_rows,
                        double target_fraction);

/// CSV report: frame_index, l, tau, decision.
void WriteGatingReportCsv(const std::string& path, const GatingModel& model,
                          const Rows& rows);

}  // namespace vowelkit

#endif  // VOWELKIT_GATING_H_
