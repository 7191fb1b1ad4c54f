// core/src/gmm.cc

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

#include "vowelkit/gmm.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace vowelkit {

namespace {

double LogDiagGaussian(std::span<const double> x, const Vec& mean,
                       const Vec& variance) {
  double acc = 0.0;
  for (size_t d = 0; d < mean.size(); ++d) {
    const double diff = x[d] - mean[d];
    acc += std::log(2.0 * kPi * variance[d]) + diff * diff / variance[d];
  }
  return -0.5 * acc;
}

// View of the strictly-positive-weight rows; zero-weight rows cannot affect
// the fit and skipping them keeps the result bit-identical to training on
// the positive subset alone.
struct ActiveData {
  std::vector<size_t> index;
  double total_weight = 0.0;
};

ActiveData CollectActive(const Vec& weights) {
  ActiveData active;
  for (size_t n = 0; n < weights.size(); ++n) {
    Require(weights[n] >= 0.0 && std::isfinite(weights[n]),
            "em_fit: frame weights must be finite and nonnegative");
    if (weights[n] > 0.0) {
      active.index.push_back(n);
      active.total_weight += weights[n];
    }
  }
  return active;
}

// k-means++ seeding followed by a few weighted Lloyd iterations.
GmmModel KmeansInit(const Rows& data, const Vec& weights,
                    const ActiveData& active, int m,
                    const GmmTrainConfig& config, RandomStream* rng) {
  const size_t dim = data[active.index[0]].size();
  const size_t n_active = active.index.size();

  // Seeding: first center weight-proportional, then weight * D^2.
  Rows centers;
  centers.reserve(m);
  auto pick_by_cumsum = [&](const Vec& mass) -> size_t {
    double total = std::accumulate(mass.begin(), mass.end(), 0.0);
    double u = rng->Uniform01() * total;
    double cum = 0.0;
    for (size_t i = 0; i < mass.size(); ++i) {
      cum += mass[i];
      if (u < cum) return i;
    }
    return mass.size() - 1;
  };

  {
    Vec mass(n_active);
    for (size_t i = 0; i < n_active; ++i) mass[i] = weights[active.index[i]];
    centers.push_back(data[active.index[pick_by_cumsum(mass)]]);
  }
  Vec dist2(n_active);
  for (size_t i = 0; i < n_active; ++i)
    dist2[i] = SquaredDistance(data[active.index[i]], centers[0]);
  while (static_cast<int>(centers.size()) < m) {
    Vec mass(n_active);
    for (size_t i = 0; i < n_active; ++i)
      mass[i] = weights[active.index[i]] * dist2[i];
    double total = std::accumulate(mass.begin(), mass.end(), 0.0);
    size_t pick = total > 0.0 ? pick_by_cumsum(mass)
                              : centers.size() % n_active;  // all points coincide
    centers.push_back(data[active.index[pick]]);
    for (size_t i = 0; i < n_active; ++i)
      dist2[i] = std::min(
          dist2[i], SquaredDistance(data[active.index[i]], centers.back()));
  }

  std::vector<int> assignment(n_active, 0);
  for (int iter = 0; iter < config.kmeans_iterations; ++iter) {
    for (size_t i = 0; i < n_active; ++i) {
      double best = std::numeric_limits<double>::infinity();
      int best_c = 0;
      for (int c = 0; c < m; ++c) {
        double d2 = SquaredDistance(data[active.index[i]], centers[c]);
        if (d2 < best) {
          best = d2;
          best_c = c;
        }
      }
      assignment[i] = best_c;
    }
    Rows sums(m, Vec(dim, 0.0));
    Vec mass(m, 0.0);
    for (size_t i = 0; i < n_active; ++i) {
      const double w = weights[active.index[i]];
      mass[assignment[i]] += w;
      const Vec& row = data[active.index[i]];
      Vec& sum = sums[assignment[i]];
      for (size_t d = 0; d < dim; ++d) sum[d] += w * row[d];
    }
    for (int c = 0; c < m; ++c) {
      if (mass[c] > 0.0) {
        for (size_t d = 0; d < dim; ++d) centers[c][d] = sums[c][d] / mass[c];
      } else {
        // Re-seed an empty cluster at the heaviest outlier.
        size_t far = 0;
        double far_score = -1.0;
        for (size_t i = 0; i < n_active; ++i) {
          double score = weights[active.index[i]] *
                         SquaredDistance(data[active.index[i]],
                                         centers[assignment[i]]);
          if (score > far_score) {
            far_score = score;
            far = i;
          }
        }
        centers[c] = data[active.index[far]];
      }
    }
  }

  // Final hard assignment -> initial mixture parameters.
  for (size_t i = 0; i < n_active; ++i) {
    double best = std::numeric_limits<double>::infinity();
    int best_c = 0;
    for (int c = 0; c < m; ++c) {
      double d2 = SquaredDistance(data[active.index[i]], centers[c]);
      if (d2 < best) {
        best = d2;
        best_c = c;
      }
    }
    assignment[i] = best_c;
  }

  GmmModel model;
  model.dimension = static_cast<int>(dim);
  model.components.resize(m);
  Vec mass(m, 0.0);
  Rows var_sums(m, Vec(dim, 0.0));
  for (size_t i = 0; i < n_active; ++i)
    mass[assignment[i]] += weights[active.index[i]];
  for (size_t i = 0; i < n_active; ++i) {
    const double w = weights[active.index[i]];
    const Vec& row = data[active.index[i]];
    Vec& vs = var_sums[assignment[i]];
    const Vec& c = centers[assignment[i]];
    for (size_t d = 0; d < dim; ++d) {
      double diff = row[d] - c[d];
      vs[d] += w * diff * diff;
    }
  }

  // Global weighted variance as fallback for starved clusters.
  Vec global_mean(dim, 0.0), global_var(dim, 0.0);
  for (size_t i = 0; i < n_active; ++i) {
    const double w = weights[active.index[i]];
    const Vec& row = data[active.index[i]];
    for (size_t d = 0; d < dim; ++d) global_mean[d] += w * row[d];
  }
  for (size_t d = 0; d < dim; ++d) global_mean[d] /= active.total_weight;
  for (size_t i = 0; i < n_active; ++i) {
    const double w = weights[active.index[i]];
    const Vec& row = data[active.index[i]];
    for (size_t d = 0; d < dim; ++d) {
      double diff = row[d] - global_mean[d];
      global_var[d] += w * diff * diff;
    }
  }
  for (size_t d = 0; d < dim; ++d)
    global_var[d] =
        std::max(global_var[d] / active.total_weight, config.variance_floor);

  double weight_total = 0.0;
  for (int c = 0; c < m; ++c) weight_total += std::max(mass[c], 1e-10);
  for (int c = 0; c < m; ++c) {
    GaussianComponent& comp = model.components[c];
    comp.weight = std::max(mass[c], 1e-10) / weight_total;
    comp.mean = centers[c];
    comp.variance.resize(dim);
    for (size_t d = 0; d < dim; ++d) {
      comp.variance[d] =
          mass[c] > 0.0
              ? std::max(var_sums[c][d] / mass[c], config.variance_floor)
              : global_var[d];
    }
  }
  return model;
}

}  // namespace

double GmmLogDensity(const GmmModel& model, std::span<const double> x) {
  Require(static_cast<int>(x.size()) == model.dimension,
          "gmm: dimension mismatch (" + std::to_string(x.size()) + " vs " +
              std::to_string(model.dimension) + ")");
  Vec terms(model.components.size());
  for (size_t m = 0; m < model.components.size(); ++m) {
    const GaussianComponent& c = model.components[m];
    terms[m] = std::log(c.weight) + LogDiagGaussian(x, c.mean, c.variance);
  }
  return LogSumExp(terms);
}

double GmmDensity(const GmmModel& model, std::span<const double> x) {
  return std::exp(GmmLogDensity(model, x));
}

GmmModel FitGmm(const Rows& data, const Vec& frame_weights, int num_components,
                const GmmTrainConfig& config, GmmTrainStats* stats,
                const std::string& class_label) {
  Require(num_components >= 1, "em_fit: need at least one component");
  Require(data.size() == frame_weights.size(),
          "em_fit: weights size must match row count");
  Require(!data.empty(), "em_fit: empty data");
  const size_t dim = data[0].size();
  for (const Vec& row : data)
    Require(row.size() == dim, "em_fit: ragged data rows");

  ActiveData active = CollectActive(frame_weights);
  if (static_cast<int>(active.index.size()) < num_components)
    throw std::invalid_argument(
        "em_fit: " + std::to_string(active.index.size()) +
        " effectively weighted rows but " + std::to_string(num_components) +
        " components requested");

  RandomStream rng(config.seed);
  GmmModel model;
  if (config.initial_model.has_value()) {
    model = *config.initial_model;
    Require(model.dimension == static_cast<int>(dim),
            "em_fit: initial model dimension mismatch");
    Require(static_cast<int>(model.components.size()) == num_components,
            "em_fit: initial model component count mismatch");
  } else {
    model = KmeansInit(data, frame_weights, active, num_components, config, &rng);
  }
  model.class_label = class_label;

  const size_t n_active = active.index.size();
  const int m = num_components;
  Rows responsibilities(n_active, Vec(m));
  Vec log_terms(m);

  GmmModel previous = model;
  double previous_ll = -std::numeric_limits<double>::infinity();
  if (stats != nullptr) *stats = GmmTrainStats{};

  for (int iter = 0; iter < config.max_iterations; ++iter) {
    // E-step, with the weighted log-likelihood as a byproduct.
    KahanSum ll_sum;
    for (size_t i = 0; i < n_active; ++i) {
      const Vec& row = data[active.index[i]];
      for (int c = 0; c < m; ++c) {
        const GaussianComponent& comp = model.components[c];
        log_terms[c] =
            std::log(comp.weight) + LogDiagGaussian(row, comp.mean, comp.variance);
      }
      const double lse = LogSumExp(log_terms);
      ll_sum.Add(frame_weights[active.index[i]] * lse);
      for (int c = 0; c < m; ++c)
        responsibilities[i][c] = std::exp(log_terms[c] - lse);
    }
    const double ll = ll_sum.Value();

    if (ll + 1e-12 < previous_ll) {
      // Variance flooring can break EM's ascent guarantee; keep the better
      // iterate and stop.
      model = previous;
      if (stats != nullptr) {
        stats->reverted_on_decrease = true;
        stats->converged = true;
      }
      break;
    }
    if (stats != nullptr) {
      stats->log_likelihoods.push_back(ll);
      stats->iterations = iter + 1;
    }
    if (iter > 0 && ll - previous_ll < config.tolerance * std::abs(ll)) {
      if (stats != nullptr) stats->converged = true;
      break;
    }
    previous = model;
    previous_ll = ll;

    // M-step with compensated accumulation.
    std::vector<KahanSum> mass(m);
    std::vector<std::vector<KahanSum>> mean_sums(m, std::vector<KahanSum>(dim));
    for (size_t i = 0; i < n_active; ++i) {
      const double w = frame_weights[active.index[i]];
      const Vec& row = data[active.index[i]];
      for (int c = 0; c < m; ++c) {
        const double wr = w * responsibilities[i][c];
        mass[c].Add(wr);
        for (size_t d = 0; d < dim; ++d) mean_sums[c][d].Add(wr * row[d]);
      }
    }
    for (int c = 0; c < m; ++c) {
      double nk = std::max(mass[c].Value(), 1e-300);
      GaussianComponent& comp = model.components[c];
      comp.weight = nk / active.total_weight;
      for (size_t d = 0; d < dim; ++d)
        comp.mean[d] = mean_sums[c][d].Value() / nk;
    }
    std::vector<std::vector<KahanSum>> var_sums(m, std::vector<KahanSum>(dim));
    for (size_t i = 0; i < n_active; ++i) {
      const double w = frame_weights[active.index[i]];
      const Vec& row = data[active.index[i]];
      for (int c = 0; c < m; ++c) {
        const double wr = w * responsibilities[i][c];
        const Vec& mean = model.components[c].mean;
        for (size_t d = 0; d < dim; ++d) {
          const double diff = row[d] - mean[d];
          var_sums[c][d].Add(wr * diff * diff);
        }
      }
    }
    for (int c = 0; c < m; ++c) {
      double nk = std::max(mass[c].Value(), 1e-300);
      GaussianComponent& comp = model.components[c];
      for (size_t d = 0; d < dim; ++d)
        comp.variance[d] =
            std::max(var_sums[c][d].Value() / nk, config.variance_floor);
    }
    // Guard against weight drift; keeps sum(c_m) = 1 exactly testable.
    double wsum = 0.0;
    for (const auto& comp : model.components) wsum += comp.weight;
    for (auto& comp : model.components) comp.weight /= wsum;
  }
  return model;
}

SoftSegmentWeights MakeSoftSegmentWeights(int core_begin, int core_end,
                                          int context) {
  Require(core_end > core_begin, "soft_segment_weights: empty core range");
  Require(context >= 0, "soft_segment_weights: negative context");
  SoftSegmentWeights out;
  out.first_frame = core_begin - context;
  out.weights.resize(static_cast<size_t>(core_end - core_begin) + 2 * context);
  for (int k = 1; k <= context; ++k) {
    const double w = 0.5 * (1.0 + std::cos(kPi * k / (context + 1)));
    out.weights[context - k] = w;                          // left taper
    out.weights[out.weights.size() - context + k - 1] = w; // right taper
  }
  for (int i = 0; i < core_end - core_begin; ++i)
    out.weights[context + i] = 1.0;
  return out;
}

double ConfidenceMeasure(const GmmModel& vowel_model,
                         const GmmModel& nonvowel_model, const Rows& segment) {
  Require(!segment.empty(), "confidence_measure: empty segment");
  KahanSum ratio;
  for (const Vec& row : segment)
    ratio.Add(GmmLogDensity(vowel_model, row) -
              GmmLogDensity(nonvowel_model, row));
  return Logistic(ratio.Value() / static_cast<double>(segment.size()));
}

}  // namespace vowelkit
