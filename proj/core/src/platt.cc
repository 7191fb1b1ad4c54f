// core/src/platt.cc

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

#include "vowelkit/platt.h"

#include <algorithm>
#include <cmath>

namespace vowelkit {

namespace {

constexpr double kGradientTolerance = 1e-8;
constexpr int kMaxIterations = 100;
constexpr double kHessianRidge = 1e-12;

void CountClasses(const std::vector<int>& labels, int* n_plus, int* n_minus) {
  *n_plus = 0;
  *n_minus = 0;
  for (int y : labels) {
    Require(y == 1 || y == -1, "platt: labels must be -1 or +1");
    if (y == 1)
      ++*n_plus;
    else
      ++*n_minus;
  }
  Require(*n_plus >= 1, "platt: no positive examples");
  Require(*n_minus >= 1, "platt: no negative examples");
}

// Stable cross-entropy term for margin z = A*f + B and target t:
// t*z + log(1 + exp(-z)) when z >= 0, (t-1)*z + log(1 + exp(z)) otherwise.
double StableTerm(double z, double t) {
  if (z >= 0.0) return t * z + std::log1p(std::exp(-z));
  return (t - 1.0) * z + std::log1p(std::exp(z));
}

}  // namespace

Vec PlattTargets(const std::vector<int>& labels) {
  int n_plus, n_minus;
  CountClasses(labels, &n_plus, &n_minus);
  const double t_plus = (n_plus + 1.0) / (n_plus + 2.0);
  const double t_minus = 1.0 / (n_minus + 2.0);
  Vec targets(labels.size());
  for (size_t i = 0; i < labels.size(); ++i)
    targets[i] = labels[i] == 1 ? t_plus : t_minus;
  return targets;
}

double PlattObjective(const PlattParams& params, const Vec& decision_values,
                      const std::vector<int>& labels) {
  Require(decision_values.size() == labels.size(),
          "platt: decision/label size mismatch");
  const Vec targets = PlattTargets(labels);
  KahanSum acc;
  for (size_t i = 0; i < labels.size(); ++i)
    acc.Add(StableTerm(params.a * decision_values[i] + params.b, targets[i]));
  return acc.Value();
}

std::array<double, 2> PlattGradient(const PlattParams& params,
                                    const Vec& decision_values,
                                    const std::vector<int>& labels) {
  const Vec targets = PlattTargets(labels);
  KahanSum ga, gb;
  for (size_t i = 0; i < labels.size(); ++i) {
    const double z = params.a * decision_values[i] + params.b;
    const double p = Logistic(-z);  // P(y=+1)
    const double dz = targets[i] - p;
    ga.Add(dz * decision_values[i]);
    gb.Add(dz);
  }
  return {ga.Value(), gb.Value()};
}

PlattParams FitPlattSigmoid(const Vec& decision_values,
                            const std::vector<int>& labels) {
  Require(AllFinite(decision_values), "fit_sigmoid: non-finite decision values");
  int n_plus, n_minus;
  CountClasses(labels, &n_plus, &n_minus);
  const Vec targets = PlattTargets(labels);

  PlattParams params;
  params.a = 0.0;
  params.b = std::log((n_minus + 1.0) / (n_plus + 1.0));
  double objective = PlattObjective(params, decision_values, labels);

  for (int iter = 0; iter < kMaxIterations; ++iter) {
    double ga = 0.0, gb = 0.0, haa = kHessianRidge, hbb = kHessianRidge,
           hab = 0.0;
    for (size_t i = 0; i < labels.size(); ++i) {
      const double f = decision_values[i];
      const double z = params.a * f + params.b;
      const double p = Logistic(-z);
      const double q = 1.0 - p;
      const double dz = targets[i] - p;
      ga += dz * f;
      gb += dz;
      const double pq = p * q;
      haa += f * f * pq;
      hab += f * pq;
      hbb += pq;
    }
    if (std::max(std::abs(ga), std::abs(gb)) < kGradientTolerance) break;

    // Newton direction for the minimization: note dF/dz = t - p, so the
    // gradient of F is (ga, gb) and the Hessian is positive definite.
    const double det = haa * hbb - hab * hab;
    double da = -(hbb * ga - hab * gb) / det;
    double db = -(haa * gb - hab * ga) / det;

    // Backtracking: halve the step until the objective decreases.
    double step = 1.0;
    bool accepted = false;
    for (int halving = 0; halving < 60; ++halving) {
      PlattParams trial{params.a + step * da, params.b + step * db};
      const double trial_objective =
          PlattObjective(trial, decision_values, labels);
      if (trial_objective < objective + 1e-4 * step * (ga * da + gb * db)) {
        params = trial;
        objective = trial_objective;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // numerically at the floor
  }
  return params;
}

double PlattPosterior(const PlattParams& params, double decision_value) {
  Require(std::isfinite(decision_value), "posterior: non-finite decision value");
  const double z = params.a * decision_value + params.b;
  // 1/(1+exp(z)) via the branch-safe logistic of -z.
  if (z >= 0.0) {
    const double e = std::exp(-z);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(z));
}

}  // namespace vowelkit
