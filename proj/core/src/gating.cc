// core/src/gating.cc

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

#include "vowelkit/gating.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace vowelkit {

double GatingModel::Tau() const {
  Require(prior_vowel > 0.0 && prior_nonvowel > 0.0,
          "gating: priors must be positive");
  return std::log(prior_nonvowel / prior_vowel);
}

void GatingModel::SetPriors(double unnormalized_vowel,
                            double unnormalized_nonvowel) {
  Require(unnormalized_vowel > 0.0 && unnormalized_nonvowel > 0.0,
          "gating: priors must be positive");
  const double total = unnormalized_vowel + unnormalized_nonvowel;
  prior_vowel = unnormalized_vowel / total;
  prior_nonvowel = unnormalized_nonvowel / total;
}

std::string ToString(GateDecision decision) {
  switch (decision) {
    case GateDecision::kAcceptVowel:
      return "accept_vowel";
    case GateDecision::kAcceptNonVowel:
      return "accept_nonvowel";
    case GateDecision::kAmbiguous:
      return "ambiguous";
  }
  return "ambiguous";
}

double LogLikelihoodRatio(const GatingModel& model, std::span<const double> x) {
  return GmmLogDensity(model.vowel, x) - GmmLogDensity(model.nonvowel, x);
}

GateResult Gate(const GatingModel& model, std::span<const double> x) {
  Require(model.epsilon >= 0.0, "gating: epsilon must be nonnegative");
  GateResult result;
  result.score = LogLikelihoodRatio(model, x);
  const double tau = model.Tau();
  if (result.score > tau + model.epsilon) {
    result.decision = GateDecision::kAcceptVowel;
  } else if (result.score < tau - model.epsilon) {
    result.decision = GateDecision::kAcceptNonVowel;
  } else {
    result.decision = GateDecision::kAmbiguous;
  }
  return result;
}

GatedSelection SelectAmbiguousTrainingSet(const GatingModel& model,
                                          const Rows& rows,
                                          const std::vector<int>& labels) {
  Require(rows.size() == labels.size(),
          "select_svm_training_set: rows/labels size mismatch");
  GatedSelection selection;
  for (size_t i = 0; i < rows.size(); ++i) {
    if (Gate(model, rows[i]).decision == GateDecision::kAmbiguous) {
      selection.rows.push_back(rows[i]);
      selection.labels.push_back(labels[i]);
      selection.indices.push_back(i);
    }
  }
  if (selection.rows.empty())
    throw std::runtime_error(
        "select_svm_training_set: no ambiguous frames at epsilon = " +
        std::to_string(model.epsilon) + "; increase epsilon");
  return selection;
}

double CalibrateEpsilon(const GatingModel& model, const Rows& validation_rows,
                        double target_fraction) {
  Require(!validation_rows.empty(), "calibrate_epsilon: empty validation set");
  Require(target_fraction > 0.0 && target_fraction <= 1.0,
          "calibrate_epsilon: target fraction must be in (0, 1]");

  const double tau = model.Tau();
  Vec deviations;
  deviations.reserve(validation_rows.size());
  for (const Vec& row : validation_rows)
    deviations.push_back(std::abs(LogLikelihoodRatio(model, row) - tau));

  auto fraction_at = [&](double eps) {
    size_t count = 0;
    for (double d : deviations)
      if (d <= eps) ++count;
    return static_cast<double>(count) / deviations.size();
  };

  double hi = *std::max_element(deviations.begin(), deviations.end());
  if (fraction_at(hi) < target_fraction)
    throw std::runtime_error("calibrate_epsilon: target fraction unreachable");
  double lo = 0.0;
  if (fraction_at(lo) >= target_fraction) return 0.0;
  while (hi - lo > 1e-4) {
    const double mid = 0.5 * (lo + hi);
    if (fraction_at(mid) >= target_fraction) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

void WriteGatingReportCsv(const std::string& path, const GatingModel& model,
                          const Rows& rows) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("gating report: cannot write " + path);
  const double tau = model.Tau();
  out << "frame_index,l,tau,decision\n";
  char buf[64];
  for (size_t i = 0; i < rows.size(); ++i) {
    const GateResult r = Gate(model, rows[i]);
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,", i, r.score, tau);
    out << buf << ToString(r.decision) << '\n';
  }
}

}  // namespace vowelkit
