// core/include/vowelkit/svm.h

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

#ifndef VOWELKIT_SVM_H_
#define VOWELKIT_SVM_H_

#include <optional>
#include <vector>

#include "vowelkit/common.h"
#include "vowelkit/platt.h"

namespace vowelkit {

/// exp(-|x-y|^2 / (2*sigma^2)); symmetric, K(x,x) = 1.
double RbfKernel(std::span<const double> x, std::span<const double> y,
                 double sigma);

/// Per-dimension standardization (zero mean, unit variance on training
/// statistics). Constant dimensions keep std = 1.
struct FeatureScaler {
  Vec mean;
  Vec std;

  static FeatureScaler Fit(const Rows& rows);
  static FeatureScaler Identity(size_t dimension);
  Vec Apply(std::span<const double> x) const;
  Rows ApplyAll(const Rows& rows) const;
};

struct KernelParams {
  double sigma = 1.0;
};

/// Soft-margin RBF SVM in dual form. support_vectors are stored in the
/// scaler's standardized space; coefficients are alpha_i * y_i.
struct SvmModel {
  Rows support_vectors;
  Vec coefficients;
  double bias = 0.0;
  double c = 1.0;
  KernelParams kernel;
  FeatureScaler scaler;
  std::optional<PlattParams> platt;

  int Dimension() const { return static_cast<int>(scaler.mean.size()); }
};

struct SmoConfig {
  double c = 10.0;
  double sigma = 1.0;
  double tolerance = 1e-3;  // KKT stopping tolerance
  long max_iterations = 1000000;
  bool standardize = true;
};

struct SmoResult {
  SvmModel model;
  double dual_objective = 0.0;  // sum(alpha) - 0.5 alpha' Q alpha
  long iterations = 0;
  double kkt_gap = 0.0;
  bool converged = false;
};

/// Sequential minimal optimization with maximal-violating-pair selection
/// and a full kernel cache. Labels must be -1/+1 with both classes present;
/// non-finite features are rejected.
SmoResult TrainSmo(const Rows& rows, const std::vector<int>& labels,
                   const SmoConfig& config);

/// f(x) = sum_i coeff_i K(s_i, x) + b, after standardization.
double DecisionValue(const SvmModel& model, std::span<const double> x);

/// Maximum KKT complementarity violation over the given training set.
double MaxKktViolation(const SvmModel& model, const Rows& rows,
                       const std::vector<int>& labels);

struct CvGrid {
  Vec c_values{0.1, 1.0, 10.0, 100.0};
  Vec sigma_values{0.5, 1.0, 2.0, 4.0};
  int folds = 5;
};

struct CvResult {
  double best_c = 1.0;
  double best_sigma = 1.0;
  double best_accuracy = 0.0;
  /// Out-of-fold decision values at the chosen grid point, aligned with
  /// the input order; the calibration set for the sigmoid fit.
  Vec heldout_decisions;
};

/// Stratified k-fold grid search. Ties resolve to the first grid point in
/// (C, sigma) iteration order, so results are deterministic.
CvResult CrossValidate(const Rows& rows, const std::vector<int>& labels,
                       const CvGrid& grid, const SmoConfig& base_config,
                       uint64_t seed);

}  // namespace vowelkit

#endif  // VOWELKIT_SVM_H_
