// core/include/vowelkit/platt.h

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

#ifndef VOWELKIT_PLATT_H_
#define VOWELKIT_PLATT_H_

#include <array>
#include <vector>

#include "vowelkit/common.h"

namespace vowelkit {

/// Sigmoid map from decision values to posteriors:
/// P(y=+1|f) = 1 / (1 + exp(A*f + B)).
struct PlattParams {
  double a = 0.0;
  double b = 0.0;
};

/// Regularized targets: (N+ + 1)/(N+ + 2) for positives, 1/(N- + 2) for
/// negatives. Labels must be in {-1, +1} with both classes present.
Vec PlattTargets(const std::vector<int>& labels);

/// Cross-entropy objective of the target vector under (A, B); evaluated
/// with the log(1+exp) branch form, never takes log(0).
double PlattObjective(const PlattParams& params, const Vec& decision_values,
                      const std::vector<int>& labels);

/// Objective gradient d/d(A, B).
std::array<double, 2> PlattGradient(const PlattParams& params,
                                    const Vec& decision_values,
                                    const std::vector<int>& labels);

/// Damped Newton fit of (A, B) from the prior-matching start
/// (A, B) = (0, log((N-+1)/(N++1))); converges when the gradient
/// infinity-norm drops below 1e-8 (at most 100 iterations).
PlattParams FitPlattSigmoid(const Vec& decision_values,
                            const std::vector<int>& labels);

/// Overflow-safe evaluation of the sigmoid posterior.
double PlattPosterior(const PlattParams& params, double decision_value);

}  // namespace vowelkit

#endif  // VOWELKIT_PLATT_H_
