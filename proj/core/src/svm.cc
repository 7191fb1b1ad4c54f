// core/src/svm.cc

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

#include "vowelkit/svm.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vowelkit {

namespace {

constexpr size_t kMaxCacheRows = 6000;  // full kernel cache: 8 bytes * n^2

void ValidateTrainingSet(const Rows& rows, const std::vector<int>& labels) {
  Require(!rows.empty(), "smo_train: empty training set");
  Require(rows.size() == labels.size(), "smo_train: rows/labels size mismatch");
  const size_t dim = rows[0].size();
  bool has_plus = false, has_minus = false;
  for (size_t i = 0; i < rows.size(); ++i) {
    Require(rows[i].size() == dim, "smo_train: ragged feature rows");
    Require(AllFinite(rows[i]), "smo_train: non-finite feature value in row " +
                                    std::to_string(i));
    Require(labels[i] == 1 || labels[i] == -1,
            "smo_train: labels must be -1 or +1");
    if (labels[i] == 1) has_plus = true;
    if (labels[i] == -1) has_minus = true;
  }
  Require(has_plus && has_minus,
          "smo_train: training set must contain both classes");
  Require(rows.size() <= kMaxCacheRows,
          "smo_train: " + std::to_string(rows.size()) +
              " rows exceed the full-kernel-cache limit (" +
              std::to_string(kMaxCacheRows) + "); subsample first");
}

}  // namespace

double RbfKernel(std::span<const double> x, std::span<const double> y,
                 double sigma) {
  Require(x.size() == y.size(), "rbf_kernel: dimension mismatch");
  Require(sigma > 0.0, "rbf_kernel: sigma must be positive");
  return std::exp(-SquaredDistance(x, y) / (2.0 * sigma * sigma));
}

FeatureScaler FeatureScaler::Fit(const Rows& rows) {
  Require(!rows.empty(), "scaler: empty data");
  const size_t dim = rows[0].size();
  FeatureScaler scaler;
  scaler.mean.assign(dim, 0.0);
  scaler.std.assign(dim, 0.0);
  for (const Vec& row : rows)
    for (size_t d = 0; d < dim; ++d) scaler.mean[d] += row[d];
  for (size_t d = 0; d < dim; ++d) scaler.mean[d] /= rows.size();
  for (const Vec& row : rows)
    for (size_t d = 0; d < dim; ++d) {
      const double diff = row[d] - scaler.mean[d];
      scaler.std[d] += diff * diff;
    }
  for (size_t d = 0; d < dim; ++d) {
    scaler.std[d] = std::sqrt(scaler.std[d] / rows.size());
    if (scaler.std[d] < 1e-12) scaler.std[d] = 1.0;  // constant dimension
  }
  return scaler;
}

FeatureScaler FeatureScaler::Identity(size_t dimension) {
  FeatureScaler scaler;
  scaler.mean.assign(dimension, 0.0);
  scaler.std.assign(dimension, 1.0);
  return scaler;
}

Vec FeatureScaler::Apply(std::span<const double> x) const {
  Require(x.size() == mean.size(), "scaler: dimension mismatch");
  Vec out(x.size());
  for (size_t d = 0; d < x.size(); ++d) out[d] = (x[d] - mean[d]) / std[d];
  return out;
}

Rows FeatureScaler::ApplyAll(const Rows& rows) const {
  Rows out;
  out.reserve(rows.size());
  for (const Vec& row : rows) out.push_back(Apply(row));
  return out;
}

SmoResult TrainSmo(const Rows& rows, const std::vector<int>& labels,
                   const SmoConfig& config) {
  ValidateTrainingSet(rows, labels);
  Require(config.c > 0.0, "smo_train: C must be positive");
  Require(config.sigma > 0.0, "smo_train: sigma must be positive");
  Require(config.tolerance > 0.0, "smo_train: tolerance must be positive");

  const size_t n = rows.size();
  FeatureScaler scaler = config.standardize
                             ? FeatureScaler::Fit(rows)
                             : FeatureScaler::Identity(rows[0].size());
  const Rows x = scaler.ApplyAll(rows);
  const double c = config.c;
  const double sigma = config.sigma;

  // Full kernel cache; training sets are small once gating has run.
  std::vector<double> kernel(n * n);
  for (size_t i = 0; i < n; ++i) {
    kernel[i * n + i] = 1.0;
    for (size_t j = i + 1; j < n; ++j) {
      const double k = RbfKernel(x[i], x[j], sigma);
      kernel[i * n + j] = k;
      kernel[j * n + i] = k;
    }
  }

  Vec alpha(n, 0.0);
  Vec grad(n, -1.0);  // gradient of 0.5 a'Qa - e'a at a = 0
  Vec y(n);
  for (size_t i = 0; i < n; ++i) y[i] = labels[i];

  auto in_up = [&](size_t i) {
    return (y[i] > 0 && alpha[i] < c) || (y[i] < 0 && alpha[i] > 0);
  };
  auto in_low = [&](size_t i) {
    return (y[i] > 0 && alpha[i] > 0) || (y[i] < 0 && alpha[i] < c);
  };

  SmoResult result;
  double m_up = 0.0, m_low = 0.0;
  long iter = 0;
  for (; iter < config.max_iterations; ++iter) {
    // Maximal violating pair.
    m_up = -std::numeric_limits<double>::infinity();
    m_low = std::numeric_limits<double>::infinity();
    size_t i_up = n, i_low = n;
    for (size_t k = 0; k < n; ++k) {
      const double v = -y[k] * grad[k];
      if (in_up(k) && v > m_up) {
        m_up = v;
        i_up = k;
      }
      if (in_low(k) && v < m_low) {
        m_low = v;
        i_low = k;
      }
    }
    if (i_up == n || i_low == n || m_up - m_low <= config.tolerance) {
      result.converged = true;
      break;
    }

    const size_t i = i_up, j = i_low;
    const double kii = kernel[i * n + i], kjj = kernel[j * n + j],
                 kij = kernel[i * n + j];
    double quad = kii + kjj - 2.0 * kij;
    if (quad <= 0.0) quad = 1e-12;

    // Move along the feasible direction (alpha_i += y_i t, alpha_j -= y_j t)
    // to the unconstrained minimum, then clip to the box.
    double t = (m_up - m_low) / quad;
    const double ai_old = alpha[i], aj_old = alpha[j];
    double t_max = y[i] > 0 ? c - ai_old : ai_old;
    t_max = std::min(t_max, y[j] > 0 ? aj_old : c - aj_old);
    t = std::min(t, t_max);

    alpha[i] = ai_old + y[i] * t;
    alpha[j] = aj_old - y[j] * t;
    const double delta_i = alpha[i] - ai_old;
    const double delta_j = alpha[j] - aj_old;
    for (size_t k = 0; k < n; ++k)
      grad[k] += y[k] * (y[i] * kernel[i * n + k] * delta_i +
                         y[j] * kernel[j * n + k] * delta_j);
  }
  result.iterations = iter;
  result.kkt_gap = std::max(0.0, m_up - m_low);

  // Bias from the free vectors when available, else the violating-pair
  // midpoint; -y_k * grad_k equals y_k - (f(x_k) - b).
  double bias;
  {
    double sum = 0.0;
    int free_count = 0;
    for (size_t k = 0; k < n; ++k)
      if (alpha[k] > 0.0 && alpha[k] < c) {
        sum += -y[k] * grad[k];
        ++free_count;
      }
    bias = free_count > 0 ? sum / free_count : 0.5 * (m_up + m_low);
  }

  SvmModel& model = result.model;
  model.bias = bias;
  model.c = c;
  model.kernel.sigma = sigma;
  model.scaler = std::move(scaler);
  double dual_linear = 0.0, alpha_dot_grad = 0.0;
  for (size_t k = 0; k < n; ++k) {
    dual_linear += alpha[k];
    alpha_dot_grad += alpha[k] * grad[k];
    if (alpha[k] > 0.0) {
      model.support_vectors.push_back(x[k]);
      model.coefficients.push_back(alpha[k] * y[k]);
    }
  }
  // a'Qa = a'(grad + e), so the dual objective needs no extra kernel pass.
  result.dual_objective = 0.5 * (dual_linear - alpha_dot_grad);
  return result;
}

double DecisionValue(const SvmModel& model, std::span<const double> x) {
  const Vec scaled = model.scaler.Apply(x);
  double f = model.bias;
  for (size_t i = 0; i < model.support_vectors.size(); ++i)
    f += model.coefficients[i] *
         RbfKernel(model.support_vectors[i], scaled, model.kernel.sigma);
  return f;
}

double MaxKktViolation(const SvmModel& model, const Rows& rows,
                       const std::vector<int>& labels) {
  Require(rows.size() == labels.size(), "kkt_report: size mismatch");
  // Recover alpha_i for the stored vectors by matching rows; simpler and
  // robust: recompute the margin for every training row and use the stored
  // coefficient when the row is a support vector.
  double max_violation = 0.0;
  for (size_t i = 0; i < rows.size(); ++i) {
    const double yf = labels[i] * DecisionValue(model, rows[i]);
    // alpha for this row: locate an identical stored vector.
    const Vec scaled = model.scaler.Apply(rows[i]);
    double alpha = 0.0;
    for (size_t s = 0; s < model.support_vectors.size(); ++s) {
      if (model.support_vectors[s] == scaled) {
        alpha = std::abs(model.coefficients[s]);
        break;
      }
    }
    double violation;
    if (alpha <= 0.0) {
      violation = std::max(0.0, 1.0 - yf);
    } else if (alpha >= model.c) {
      violation = std::max(0.0, yf - 1.0);
    } else {
      violation = std::abs(yf - 1.0);
    }
    max_violation = std::max(max_violation, violation);
  }
  return max_violation;
}

CvResult CrossValidate(const Rows& rows, const std::vector<int>& labels,
                       const CvGrid& grid, const SmoConfig& base_config,
                       uint64_t seed) {
  Require(grid.folds >= 2, "cross_validate: need at least 2 folds");
  const size_t n = rows.size();
  Require(n == labels.size(), "cross_validate: size mismatch");

  // Stratified fold assignment: shuffle within each class, deal round-robin.
  std::vector<size_t> plus_idx, minus_idx;
  for (size_t i = 0; i < n; ++i)
    (labels[i] == 1 ? plus_idx : minus_idx).push_back(i);
  Require(!plus_idx.empty() && !minus_idx.empty(),
          "cross_validate: both classes required");
  const int folds =
      std::max(2, std::min<int>(grid.folds,
                                static_cast<int>(std::min(plus_idx.size(),
                                                          minus_idx.size()))));
  RandomStream rng(MixSeed(seed, "svm-cv-folds"));
  rng.Shuffle(&plus_idx);
  rng.Shuffle(&minus_idx);
  std::vector<int> fold_of(n, 0);
  int next = 0;
  for (size_t i : plus_idx) fold_of[i] = next++ % folds;
  for (size_t i : minus_idx) fold_of[i] = next++ % folds;

  auto run_fold = [&](double c, double sigma, int fold, Vec* heldout_f,
                      int* correct, int* total) {
    Rows train_rows;
    std::vector<int> train_labels;
    std::vector<size_t> test_idx;
    for (size_t i = 0; i < n; ++i) {
      if (fold_of[i] == fold) {
        test_idx.push_back(i);
      } else {
        train_rows.push_back(rows[i]);
        train_labels.push_back(labels[i]);
      }
    }
    SmoConfig cfg = base_config;
    cfg.c = c;
    cfg.sigma = sigma;
    SmoResult trained = TrainSmo(train_rows, train_labels, cfg);
    for (size_t i : test_idx) {
      const double f = DecisionValue(trained.model, rows[i]);
      if (heldout_f != nullptr) (*heldout_f)[i] = f;
      const int predicted = f >= 0.0 ? 1 : -1;
      if (predicted == labels[i]) ++*correct;
      ++*total;
    }
  };

  CvResult result;
  result.best_accuracy = -1.0;
  for (double c : grid.c_values) {
    for (double sigma : grid.sigma_values) {
      int correct = 0, total = 0;
      for (int fold = 0; fold < folds; ++fold)
        run_fold(c, sigma, fold, nullptr, &correct, &total);
      const double accuracy =
          total > 0 ? static_cast<double>(correct) / total : 0.0;
      if (accuracy > result.best_accuracy) {
        result.best_accuracy = accuracy;
        result.best_c = c;
        result.best_sigma = sigma;
      }
    }
  }

  // One more pass at the winning point to collect held-out decision values
  // for sigmoid calibration.
  result.heldout_decisions.assign(n, 0.0);
  int correct = 0, total = 0;
  for (int fold = 0; fold < folds; ++fold)
    run_fold(result.best_c, result.best_sigma, fold,
             &result.heldout_decisions, &correct, &total);
  return result;
}

}  // namespace vowelkit
