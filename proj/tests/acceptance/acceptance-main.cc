// tests/acceptance/acceptance-main.cc

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

// End-to-end acceptance runner: one pass/fail line per criterion, nonzero
// exit when anything fails. The pipeline criteria share a single training
// run over the bundled synthetic corpus at the desk-scale defaults.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "oracles.h"
#include "vowelkit/config.h"
#include "vowelkit/corpus.h"
#include "vowelkit/fusion.h"
#include "vowelkit/gating.h"
#include "vowelkit/pipeline.h"
#include "vowelkit/platt.h"
#include "vowelkit/svm.h"

using namespace vowelkit;

namespace {

struct CriterionResult {
  bool pass = false;
  std::string detail;
};

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void Expect(bool condition, const std::string& message) {
    if (!condition) {
      ok = false;
      detail << (detail.str().empty() ? "" : "; ") << message;
    }
  }
};

// Shared pipeline artifacts for criteria 6-8.
struct PipelineRun {
  PipelineConfig config;
  TrainOutput trained;
  EvaluationResult evaluation;
};

const PipelineRun& SharedRun() {
  static const PipelineRun run = [] {
    PipelineRun r;
    r.config = SyntheticDefaultConfig();
    const auto corpus =
        GenerateCorpus(r.config.corpus, MixSeed(r.config.seed, "corpus"));
    const auto [train, test] = SplitCorpus(corpus, r.config.train_fraction,
                                           MixSeed(r.config.seed, "split"));
    std::fprintf(stderr,
                 "[setup] corpus: %zu utterances (%zu train / %zu test)\n",
                 corpus.size(), train.size(), test.size());
    r.trained = TrainPipeline(train, r.config);
    std::fprintf(stderr, "[setup] training done: gated SVs %d, ungated %d\n",
                 r.trained.report.gated_support_vectors,
                 r.trained.report.ungated_support_vectors);
    r.evaluation = EvaluatePipeline(r.trained.bundle, test, r.config);
    return r;
  }();
  return run;
}

double RelError(double actual, double expected) {
  return std::abs(actual - expected) / std::max(1.0, std::abs(expected));
}

CriterionResult Criterion1FormulaFidelity() {
  Check check;
  RandomStream rng(1001);

  // Mixture density against plain per-term arithmetic.
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 1 + static_cast<int>(rng.UniformInt(4));
    const int d = 1 + static_cast<int>(rng.UniformInt(6));
    GmmModel model;
    model.dimension = d;
    double total = 0.0;
    Vec raw(m);
    for (double& w : raw) {
      w = rng.Uniform(0.1, 1.0);
      total += w;
    }
    for (int c = 0; c < m; ++c) {
      GaussianComponent comp;
      comp.weight = raw[c] / total;
      for (int k = 0; k < d; ++k) {
        comp.mean.push_back(rng.Uniform(-3.0, 3.0));
        comp.variance.push_back(rng.Uniform(0.3, 2.0));
      }
      model.components.push_back(std::move(comp));
    }
    Vec x(d);
    for (double& v : x) v = rng.Uniform(-4.0, 4.0);
    check.Expect(
        RelError(GmmDensity(model, x), oracles::DirectGmmDensity(model, x)) <=
            1e-9,
        "gmm density deviates from the direct sum");
  }

  // RBF kernel against the expanded exponent.
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 1 + static_cast<int>(rng.UniformInt(6));
    Vec x(d), y(d);
    for (double& v : x) v = rng.Uniform(-5.0, 5.0);
    for (double& v : y) v = rng.Uniform(-5.0, 5.0);
    const double sigma = rng.Uniform(0.2, 4.0);
    double d2 = 0.0;
    for (int k = 0; k < d; ++k) d2 += (x[k] - y[k]) * (x[k] - y[k]);
    const double expected = std::exp(-d2 / (2.0 * sigma * sigma));
    check.Expect(RelError(RbfKernel(x, y, sigma), expected) <= 1e-9,
                 "rbf kernel deviates");
  }

  // Calibration targets against the closed forms.
  for (int trial = 0; trial < 20; ++trial) {
    const int n_plus = 1 + static_cast<int>(rng.UniformInt(50));
    const int n_minus = 1 + static_cast<int>(rng.UniformInt(50));
    std::vector<int> labels;
    for (int i = 0; i < n_plus; ++i) labels.push_back(1);
    for (int i = 0; i < n_minus; ++i) labels.push_back(-1);
    const Vec targets = PlattTargets(labels);
    check.Expect(
        RelError(targets.front(), (n_plus + 1.0) / (n_plus + 2.0)) <= 1e-9,
        "positive target deviates");
    check.Expect(RelError(targets.back(), 1.0 / (n_minus + 2.0)) <= 1e-9,
                 "negative target deviates");
  }

  // Sigmoid posterior against direct evaluation.
  for (int trial = 0; trial < 20; ++trial) {
    const PlattParams params{rng.Uniform(-3.0, 3.0), rng.Uniform(-3.0, 3.0)};
    const double f = rng.Uniform(-30.0, 30.0);
    const double z = params.a * f + params.b;
    const double expected = 1.0 / (1.0 + std::exp(z));
    check.Expect(RelError(PlattPosterior(params, f), expected) <= 1e-9,
                 "sigmoid posterior deviates");
  }

  // Fused vowel posterior against hand arithmetic.
  const FusionWeights weights;
  for (int trial = 0; trial < 20; ++trial) {
    const FrameScores scores{rng.Uniform01(), rng.Uniform01(), rng.Uniform01()};
    const double expected = 0.3 * scores.bandpass_energy +
                            0.5 * scores.gmm_posterior +
                            0.2 * scores.svm_posterior;
    check.Expect(RelError(VowelPosterior(scores, weights), expected) <= 1e-9,
                 "fused posterior deviates");
  }

  return {check.ok, check.ok ? "gmm/rbf/targets/sigmoid/fusion all within "
                               "1e-9 of direct computation (20 instances each)"
                             : check.detail.str()};
}

CriterionResult Criterion2QpOracle() {
  Check check;
  RandomStream rng(1002);
  double worst_gap = 0.0, worst_kkt = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.UniformInt(9));
    const int d = 1 + static_cast<int>(rng.UniformInt(4));
    Rows rows;
    std::vector<int> labels;
    for (int i = 0; i < n; ++i) {
      Vec x(d);
      for (double& v : x) v = rng.Uniform(-2.0, 2.0);
      rows.push_back(std::move(x));
      labels.push_back(i % 2 == 0 ? 1 : -1);
    }
    SmoConfig config;
    config.c = Vec{0.5, 5.0, 50.0}[rng.UniformInt(3)];
    config.sigma = rng.Uniform(0.5, 3.0);
    config.tolerance = 1e-8;
    config.standardize = false;
    const SmoResult result = TrainSmo(rows, labels, config);

    std::vector<double> kernel(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        kernel[i * n + j] = RbfKernel(rows[i], rows[j], config.sigma);
    const auto oracle =
        oracles::SolveDualProjectedGradient(kernel, labels, config.c);

    const double gap = std::abs(result.dual_objective - oracle.objective) /
                       std::max(1.0, std::abs(oracle.objective));
    const double kkt = MaxKktViolation(result.model, rows, labels);
    worst_gap = std::max(worst_gap, gap);
    worst_kkt = std::max(worst_kkt, kkt);
    check.Expect(gap <= 1e-5, "dual objective gap " + std::to_string(gap));
    check.Expect(kkt <= 1e-3, "kkt violation " + std::to_string(kkt));
  }
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "100 instances: max objective gap %.2e, max KKT %.2e",
                worst_gap, worst_kkt);
  return {check.ok, check.ok ? buf : check.detail.str()};
}

CriterionResult Criterion3EmMonotonicity() {
  Check check;
  RandomStream rng(1003);
  double worst_drop = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 1 + static_cast<int>(rng.UniformInt(5));
    const int m = 1 + static_cast<int>(rng.UniformInt(4));
    const int n = 30 + static_cast<int>(rng.UniformInt(170));
    Rows data;
    for (int i = 0; i < n; ++i) {
      Vec x(d);
      for (double& v : x)
        v = rng.Gaussian(rng.Uniform(-2.0, 2.0), rng.Uniform(0.4, 1.5));
      data.push_back(std::move(x));
    }
    Vec weights(n);
    for (double& w : weights) w = rng.Uniform(0.05, 1.0);

    GmmTrainConfig config;
    config.seed = 5000 + trial;
    GmmTrainStats stats;
    FitGmm(data, weights, m, config, &stats);
    check.Expect(!stats.log_likelihoods.empty(), "no EM iterations recorded");
    for (size_t i = 1; i < stats.log_likelihoods.size(); ++i) {
      const double drop =
          stats.log_likelihoods[i - 1] - stats.log_likelihoods[i];
      worst_drop = std::max(worst_drop, drop);
      check.Expect(drop <= 1e-9, "log-likelihood dropped by " +
                                     std::to_string(drop) + " at iteration " +
                                     std::to_string(i));
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "50 runs: worst inter-iteration drop %.2e",
                worst_drop);
  return {check.ok, check.ok ? buf : check.detail.str()};
}

CriterionResult Criterion4PlattOptimality() {
  Check check;
  RandomStream rng(1004);
  double worst_grad = 0.0, worst_gap = 0.0;
  int done = 0;
  while (done < 20) {
    const int n = 20 + static_cast<int>(rng.UniformInt(60));
    const double true_a = -rng.Uniform(0.4, 2.5);
    const double true_b = rng.Uniform(-1.0, 1.0);
    Vec decisions;
    std::vector<int> labels;
    for (int i = 0; i < n; ++i) {
      const double f = rng.Uniform(-4.0, 4.0);
      const double p = 1.0 / (1.0 + std::exp(true_a * f + true_b));
      decisions.push_back(f);
      labels.push_back(rng.Uniform01() < p ? 1 : -1);
    }
    if (std::count(labels.begin(), labels.end(), 1) == 0 ||
        std::count(labels.begin(), labels.end(), -1) == 0)
      continue;
    ++done;

    const PlattParams fitted = FitPlattSigmoid(decisions, labels);
    const auto gradient = PlattGradient(fitted, decisions, labels);
    const double grad_norm =
        std::max(std::abs(gradient[0]), std::abs(gradient[1]));
    worst_grad = std::max(worst_grad, grad_norm);
    check.Expect(grad_norm <= 1e-8,
                 "gradient norm " + std::to_string(grad_norm));

    const auto oracle = oracles::GridSearchPlatt(decisions, labels);
    const double gap = std::abs(PlattObjective(fitted, decisions, labels) -
                                oracle.objective);
    worst_gap = std::max(worst_gap, gap);
    check.Expect(gap <= 1e-3, "objective gap to grid " + std::to_string(gap));
  }
  char buf[112];
  std::snprintf(buf, sizeof buf,
                "20 fits: max gradient %.2e, max gap to grid oracle %.2e",
                worst_grad, worst_gap);
  return {check.ok, check.ok ? buf : check.detail.str()};
}

CriterionResult Criterion5GatingProperties() {
  Check check;
  RandomStream rng(1005);

  auto gaussian1d = [](double mean, double variance) {
    GmmModel model;
    model.dimension = 1;
    model.components.push_back(GaussianComponent{1.0, {mean}, {variance}});
    return model;
  };

  for (int trial = 0; trial < 1000; ++trial) {
    GatingModel model;
    model.vowel = gaussian1d(rng.Uniform(-2, 2), rng.Uniform(0.3, 2.0));
    model.nonvowel = gaussian1d(rng.Uniform(-2, 2), rng.Uniform(0.3, 2.0));
    const double pv = rng.Uniform(0.05, 0.95);
    model.SetPriors(pv, 1.0 - pv);
    const Vec x{rng.Uniform(-6.0, 6.0)};

    // Three-way partition: exactly one decision, consistent with the rule.
    const double eps1 = rng.Uniform(0.0, 1.5);
    model.epsilon = eps1;
    const GateResult r1 = Gate(model, x);
    const double tau = model.Tau();
    const int expected = r1.score > tau + eps1    ? 0
                         : r1.score < tau - eps1  ? 1
                                                  : 2;
    const int got = r1.decision == GateDecision::kAcceptVowel      ? 0
                    : r1.decision == GateDecision::kAcceptNonVowel ? 1
                                                                   : 2;
    check.Expect(expected == got, "partition rule violated");

    // Ambiguity monotone in epsilon.
    model.epsilon = eps1 + rng.Uniform(0.0, 2.0);
    const GateResult r2 = Gate(model, x);
    if (r1.decision == GateDecision::kAmbiguous)
      check.Expect(r2.decision == GateDecision::kAmbiguous,
                   "ambiguous set shrank as epsilon grew");

    // Prior scale invariance.
    GatingModel scaled = model;
    scaled.SetPriors(7.3 * pv, 7.3 * (1.0 - pv));
    check.Expect(Gate(scaled, x).decision == r2.decision,
                 "decision moved under a common prior factor");
  }
  return {check.ok,
          check.ok ? "partition, epsilon-monotonicity and prior-ratio "
                     "invariance held on 1000 draws each"
                   : check.detail.str()};
}

CriterionResult Criterion6SupportVectorReduction() {
  const PipelineRun& run = SharedRun();
  const int gated = run.trained.report.gated_support_vectors;
  const int ungated = run.trained.report.ungated_support_vectors;
  Check check;
  check.Expect(gated > 0, "gated SVM has no support vectors");
  check.Expect(gated < ungated, "gated count not strictly smaller");
  check.Expect(2 * gated <= ungated, "gated count above half the ungated");
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "gated SVs %d vs ungated %d (ratio %.2f, ambiguous fraction "
                "target %.2f)",
                gated, ungated,
                ungated > 0 ? static_cast<double>(gated) / ungated : 0.0,
                run.config.gating.target_ambiguous_fraction);
  return {check.ok, buf};
}

CriterionResult Criterion7Recognition() {
  const PipelineRun& run = SharedRun();
  const ConfusionMatrix& matrix = run.evaluation.matrix;
  std::cout << matrix.FormatTable();

  Check check;
  check.Expect(matrix.Total() > 0, "no test segments were evaluated");
  check.Expect(matrix.OverallAccuracy() >= 0.90,
               "overall accuracy " + std::to_string(matrix.OverallAccuracy()));
  for (VowelClass v : kAllVowels)
    check.Expect(matrix.ClassAccuracy(v) >= 0.80,
                 ToString(v) + " accuracy " +
                     std::to_string(matrix.ClassAccuracy(v)));
  char buf[96];
  std::snprintf(buf, sizeof buf, "overall %.1f%% over %d segments",
                100.0 * matrix.OverallAccuracy(), matrix.Total());
  return {check.ok, check.ok ? buf : check.detail.str()};
}

CriterionResult Criterion8Detection() {
  const PipelineRun& run = SharedRun();
  const DetectionMetrics& detection = run.evaluation.detection;
  Check check;
  check.Expect(detection.truth_segments > 0, "no truth segments");
  check.Expect(detection.Recall() >= 0.90,
               "recall " + std::to_string(detection.Recall()));
  check.Expect(10 * detection.false_alarms <= detection.truth_segments,
               "false alarms " + std::to_string(detection.false_alarms));
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "%d/%d segments within 2 frames per boundary, %d false alarms",
                detection.hits, detection.truth_segments,
                detection.false_alarms);
  return {check.ok, check.ok ? buf : check.detail.str()};
}

CriterionResult Criterion9FusionIdentity() {
  Check check;
  RandomStream rng(1009);
  const FusionWeights weights;
  for (int trial = 0; trial < 10000; ++trial) {
    const FrameScores scores{rng.Uniform01(), rng.Uniform01(), rng.Uniform01()};
    const double v = VowelPosterior(scores, weights);
    const double nv = NonVowelPosterior(scores, weights);
    if (v + nv != 1.0) {
      check.Expect(false, "posterior complement not exactly one");
      break;
    }
  }

  // The default weight vector must load from config bit-exactly.
  namespace fs = std::filesystem;
  const fs::path tmp =
      fs::temp_directory_path() / "vowelkit-acceptance-config.json";
  SaveConfig(tmp.string(), SyntheticDefaultConfig());
  const PipelineConfig round_trip = LoadConfig(tmp.string());
  fs::remove(tmp);
  check.Expect(round_trip.fusion.energy == 0.3, "energy weight not 0.3");
  check.Expect(round_trip.fusion.gmm == 0.5, "gmm weight not 0.5");
  check.Expect(round_trip.fusion.svm == 0.2, "svm weight not 0.2");

#ifdef VOWELKIT_DEFAULT_CONFIG_PATH
  if (fs::exists(VOWELKIT_DEFAULT_CONFIG_PATH)) {
    const PipelineConfig committed = LoadConfig(VOWELKIT_DEFAULT_CONFIG_PATH);
    check.Expect(committed.fusion.energy == 0.3 &&
                     committed.fusion.gmm == 0.5 &&
                     committed.fusion.svm == 0.2,
                 "committed config weights drifted");
  } else {
    check.Expect(false, "committed default config missing");
  }
#endif
  return {check.ok, check.ok ? "complement exact on 10^4 triples; (0.3, 0.5, "
                               "0.2) loads bit-exactly"
                             : check.detail.str()};
}

CriterionResult Criterion10FrontEndDefaults() {
  Check check;
  const PipelineConfig config = SyntheticDefaultConfig();
  check.Expect(config.dsp.sample_rate == 8000, "sample rate default");
  check.Expect(config.dsp.pre_emphasis == 0.98, "pre-emphasis default");
  check.Expect(config.dsp.frame_length == 200, "frame length default");
  check.Expect(config.dsp.frame_shift == 100, "frame shift default");

  RandomStream rng(1010);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 200 + static_cast<int>(rng.UniformInt(30000));
    AudioBuffer audio;
    audio.samples.assign(n, 0.01);
    const FrameSequence frames = FrameAndWindow(audio, config.dsp);
    check.Expect(
        static_cast<int>(frames.frames.size()) == (n - 200) / 100 + 1,
        "frame count formula failed at N=" + std::to_string(n));
  }
  return {check.ok, check.ok ? "Table-style defaults bit-exact; frame count "
                               "formula held on 100 random lengths"
                             : check.detail.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<CriterionResult()>>>
      criteria = {
          {"formula fidelity", Criterion1FormulaFidelity},
          {"QP oracle equivalence", Criterion2QpOracle},
          {"EM monotonicity", Criterion3EmMonotonicity},
          {"Platt optimality", Criterion4PlattOptimality},
          {"gating properties", Criterion5GatingProperties},
          {"support-vector reduction", Criterion6SupportVectorReduction},
          {"end-to-end recognition", Criterion7Recognition},
          {"detection quality", Criterion8Detection},
          {"fusion identity", Criterion9FusionIdentity},
          {"front-end defaults", Criterion10FrontEndDefaults},
      };

  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    CriterionResult result;
    try {
      result = criteria[i].second();
    } catch (const std::exception& e) {
      result.pass = false;
      result.detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] criterion %2zu: %s — %s\n",
                result.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), result.detail.c_str());
    std::fflush(stdout);
    if (!result.pass) ++failures;
  }
  if (failures > 0)
    std::printf("%d criterion(s) failed\n", failures);
  else
    std::printf("all %zu criteria passed\n", criteria.size());
  return failures == 0 ? 0 : 1;
}
