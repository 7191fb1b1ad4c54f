// tests/unit/platt-test.cc

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

#include <cmath>

#include "doctest.h"
#include "oracles.h"

using namespace vowelkit;

TEST_CASE("regularized targets") {
  // 3 positives, 2 negatives.
  const std::vector<int> labels{1, 1, 1, -1, -1};
  const Vec targets = PlattTargets(labels);
  CHECK(targets[0] == doctest::Approx(0.8).epsilon(1e-12));   // (3+1)/(3+2)
  CHECK(targets[3] == doctest::Approx(0.25).epsilon(1e-12));  // 1/(2+2)

  // 3 negatives -> 1/5 for the negative side.
  const Vec targets2 = PlattTargets({1, -1, -1, -1});
  CHECK(targets2[1] == doctest::Approx(0.2).epsilon(1e-12));

  const Vec targets3 = PlattTargets({1, -1});
  CHECK(targets3[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(targets3[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  CHECK_THROWS(PlattTargets({1, 1, 1}));
  CHECK_THROWS(PlattTargets({-1}));
  CHECK_THROWS(PlattTargets({1, 0, -1}));

  RandomStream rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> random_labels{1, -1};
    for (int i = 0; i < 40; ++i)
      random_labels.push_back(rng.UniformInt(2) == 0 ? 1 : -1);
    for (double t : PlattTargets(random_labels)) {
      CHECK(t > 0.0);
      CHECK(t < 1.0);
    }
  }
}

TEST_CASE("posterior closed forms") {
  CHECK(PlattPosterior({0.0, 0.0}, 123.0) == 0.5);
  CHECK(PlattPosterior({-2.0, 1.0}, 3.0) ==
        doctest::Approx(0.9933071490757153).epsilon(1e-12));
  // Sigmoid limits under A = -1, B = 0.
  CHECK(PlattPosterior({-1.0, 0.0}, 800.0) == doctest::Approx(1.0));
  CHECK(PlattPosterior({-1.0, 0.0}, -800.0) == doctest::Approx(0.0));
  CHECK(PlattPosterior({-1.0, 0.0}, 800.0) <= 1.0);
  CHECK(PlattPosterior({-1.0, 0.0}, -800.0) >= 0.0);
  CHECK_THROWS(PlattPosterior({-1.0, 0.0},
                              std::numeric_limits<double>::infinity()));
}

TEST_CASE("posterior is monotone in f when A is negative") {
  RandomStream rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    PlattParams params{-rng.Uniform(0.1, 5.0), rng.Uniform(-3.0, 3.0)};
    const double f1 = rng.Uniform(-50.0, 50.0);
    const double f2 = f1 + rng.Uniform(0.01, 10.0);
    CHECK(PlattPosterior(params, f2) > PlattPosterior(params, f1));
  }
}

TEST_CASE("symmetric data fits B to zero") {
  Vec decisions;
  std::vector<int> labels;
  for (int i = 1; i <= 10; ++i) {
    decisions.push_back(0.3 * i);
    labels.push_back(1);
    decisions.push_back(-0.3 * i);
    labels.push_back(-1);
  }
  const PlattParams params = FitPlattSigmoid(decisions, labels);
  CHECK(std::abs(params.b) < 1e-6);
  CHECK(params.a < 0.0);  // larger f correlates with +1
}

TEST_CASE("fit reaches first-order optimality") {
  RandomStream rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const double true_a = -rng.Uniform(0.3, 3.0);
    const double true_b = rng.Uniform(-1.0, 1.0);
    Vec decisions;
    std::vector<int> labels;
    for (int i = 0; i < 60; ++i) {
      const double f = rng.Uniform(-4.0, 4.0);
      const double p = 1.0 / (1.0 + std::exp(true_a * f + true_b));
      decisions.push_back(f);
      labels.push_back(rng.Uniform01() < p ? 1 : -1);
    }
    if (std::count(labels.begin(), labels.end(), 1) == 0 ||
        std::count(labels.begin(), labels.end(), -1) == 0)
      continue;
    const PlattParams params = FitPlattSigmoid(decisions, labels);
    const auto gradient = PlattGradient(params, decisions, labels);
    CHECK(std::abs(gradient[0]) <= 1e-8);
    CHECK(std::abs(gradient[1]) <= 1e-8);

    // The fit cannot be worse than the prior-matching start.
    const int n_plus =
        static_cast<int>(std::count(labels.begin(), labels.end(), 1));
    const int n_minus = static_cast<int>(labels.size()) - n_plus;
    PlattParams start{0.0, std::log((n_minus + 1.0) / (n_plus + 1.0))};
    CHECK(PlattObjective(params, decisions, labels) <=
          PlattObjective(start, decisions, labels) + 1e-12);
  }
}

TEST_CASE("fit matches the grid-search oracle") {
  RandomStream rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    Vec decisions;
    std::vector<int> labels;
    for (int i = 0; i < 20; ++i) {
      const double f = rng.Uniform(-3.0, 3.0);
      const double p = 1.0 / (1.0 + std::exp(-1.5 * f + 0.2));
      decisions.push_back(f);
      labels.push_back(rng.Uniform01() < p ? 1 : -1);
    }
    if (std::count(labels.begin(), labels.end(), 1) == 0 ||
        std::count(labels.begin(), labels.end(), -1) == 0)
      continue;
    const PlattParams fitted = FitPlattSigmoid(decisions, labels);
    const auto oracle = oracles::GridSearchPlatt(decisions, labels);
    CHECK(std::abs(PlattObjective(fitted, decisions, labels) -
                   oracle.objective) <= 1e-3);
  }
}

TEST_CASE("fit stays finite on huge decision values") {
  Vec decisions{-1e3, -500.0, -1.0, 1.0, 500.0, 1e3};
  std::vector<int> labels{-1, -1, -1, 1, 1, 1};
  const PlattParams params = FitPlattSigmoid(decisions, labels);
  CHECK(std::isfinite(params.a));
  CHECK(std::isfinite(params.b));
  for (double f : decisions) {
    const double p = PlattPosterior(params, f);
    CHECK(std::isfinite(p));
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
  }
  CHECK_THROWS(FitPlattSigmoid(
      Vec{1.0, std::numeric_limits<double>::quiet_NaN()}, {1, -1}));
}
