// tests/unit/fusion-test.cc

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

#include "vowelkit/fusion.h"

#include <cmath>

#include "doctest.h"

using namespace vowelkit;

TEST_CASE("fusion weight defaults and validation") {
  FusionWeights weights;
  CHECK(weights.energy == 0.3);
  CHECK(weights.gmm == 0.5);
  CHECK(weights.svm == 0.2);
  weights.Validate();

  FusionWeights bad;
  bad.energy = 0.4;
  CHECK_THROWS(bad.Validate());
}

TEST_CASE("vowel posterior arithmetic") {
  const FusionWeights weights;
  CHECK(VowelPosterior({1.0, 1.0, 1.0}, weights) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(VowelPosterior({0.0, 0.0, 0.0}, weights) == 0.0);
  CHECK(VowelPosterior({0.5, 0.8, 0.6}, weights) ==
        doctest::Approx(0.67).epsilon(1e-12));
}

TEST_CASE("non-vowel posterior is the exact complement") {
  const FusionWeights weights;
  CHECK(NonVowelPosterior({1.0, 1.0, 1.0}, weights) ==
        doctest::Approx(0.0).epsilon(1e-15));
  CHECK(NonVowelPosterior({0.0, 0.0, 0.0}, weights) == 1.0);
  CHECK(NonVowelPosterior({0.5, 0.8, 0.6}, weights) ==
        doctest::Approx(0.33).epsilon(1e-12));
  CHECK(NonVowelPosterior({0.5, 0.5, 0.5}, weights) ==
        doctest::Approx(0.5).epsilon(1e-15));

  RandomStream rng(3);
  for (int trial = 0; trial < 2000; ++trial) {
    const FrameScores scores{rng.Uniform01(), rng.Uniform01(), rng.Uniform01()};
    const double v = VowelPosterior(scores, weights);
    const double nv = NonVowelPosterior(scores, weights);
    CHECK(v + nv == 1.0);  // bitwise identity
    // And the complement agrees with the expanded mixing formula.
    const double expanded = weights.energy * (1.0 - scores.bandpass_energy) +
                            weights.gmm * (1.0 - scores.gmm_posterior) +
                            weights.svm * (1.0 - scores.svm_posterior);
    CHECK(nv == doctest::Approx(expanded).epsilon(1e-12));
    // Boundary equivalence: v > nv exactly when v > 0.5.
    CHECK((v > nv) == (v > 0.5));
  }
}

TEST_CASE("segment extraction from a posterior curve") {
  DetectorConfig config;
  DspConfig dsp;

  SUBCASE("a constantly high curve is one segment") {
    const auto segments = SegmentsFromCurve(Vec(20, 0.9), config, dsp);
    REQUIRE(segments.size() == 1);
    CHECK(segments[0].start_frame == 0);
    CHECK(segments[0].end_frame == 20);
  }
  SUBCASE("a constantly low curve has no segments") {
    CHECK(SegmentsFromCurve(Vec(20, 0.1), config, dsp).empty());
  }
  SUBCASE("hand-built pulse keeps its crossings") {
    Vec curve;
    for (int i = 0; i < 5; ++i) curve.push_back(0.1);
    for (int i = 0; i < 6; ++i) curve.push_back(0.9);
    for (int i = 0; i < 5; ++i) curve.push_back(0.1);
    const auto segments = SegmentsFromCurve(curve, config, dsp);
    REQUIRE(segments.size() == 1);
    CHECK(segments[0].start_frame == 5);
    CHECK(segments[0].end_frame == 11);
    CHECK(segments[0].DurationFrames() == 6);
    CHECK(segments[0].start_time == doctest::Approx(5 * 100 / 8000.0));
    CHECK(segments[0].end_time == doctest::Approx((10 * 100 + 200) / 8000.0));
  }
  SUBCASE("short blips are discarded, near segments merge") {
    // Without smoothing the rules are easy to trace by hand.
    DetectorConfig plain = config;
    plain.smoothing_frames = 1;
    Vec curve(30, 0.1);
    curve[2] = 0.9;  // 1-frame blip: dropped
    for (int i = 6; i < 10; ++i) curve[i] = 0.9;   // kept
    for (int i = 11; i < 15; ++i) curve[i] = 0.9;  // gap of 1: merged
    for (int i = 20; i < 24; ++i) curve[i] = 0.9;  // gap of 5: separate
    const auto segments = SegmentsFromCurve(curve, plain, dsp);
    REQUIRE(segments.size() == 2);
    CHECK(segments[0].start_frame == 6);
    CHECK(segments[0].end_frame == 15);
    CHECK(segments[1].start_frame == 20);
    CHECK(segments[1].end_frame == 24);
  }
  SUBCASE("segments are sorted, disjoint, and long enough") {
    RandomStream rng(5);
    for (int trial = 0; trial < 50; ++trial) {
      Vec curve(80);
      for (double& v : curve) v = rng.Uniform01();
      const auto segments = SegmentsFromCurve(curve, config, dsp);
      for (size_t i = 0; i < segments.size(); ++i) {
        CHECK(segments[i].DurationFrames() >= config.min_duration_frames);
        if (i > 0)
          CHECK(segments[i].start_frame >=
                segments[i - 1].end_frame + config.merge_gap_frames);
      }
    }
  }
}

TEST_CASE("gmm-only weights reduce detection to the gmm curve") {
  FusionWeights gmm_only;
  gmm_only.energy = 0.0;
  gmm_only.gmm = 1.0;
  gmm_only.svm = 0.0;
  gmm_only.Validate();

  RandomStream rng(7);
  DetectorConfig config;
  DspConfig dsp;
  Vec gmm_curve(60);
  for (double& v : gmm_curve) v = rng.Uniform01();

  // Fused with (0,1,0) equals the raw GMM posterior curve, so the segment
  // lists must be identical whatever the other two scores do.
  Vec fused(60);
  for (size_t t = 0; t < fused.size(); ++t) {
    const FrameScores scores{rng.Uniform01(), gmm_curve[t], rng.Uniform01()};
    fused[t] = VowelPosterior(scores, gmm_only);
  }
  const auto expected = SegmentsFromCurve(gmm_curve, config, dsp);
  const auto actual = SegmentsFromCurve(fused, config, dsp);
  REQUIRE(actual.size() == expected.size());
  for (size_t i = 0; i < actual.size(); ++i) {
    CHECK(actual[i].start_frame == expected[i].start_frame);
    CHECK(actual[i].end_frame == expected[i].end_frame);
  }
}

TEST_CASE("moving average shrinks at the edges") {
  const Vec series{1.0, 2.0, 3.0, 4.0};
  const Vec smoothed = MovingAverage(series, 3);
  CHECK(smoothed[0] == doctest::Approx(1.5));
  CHECK(smoothed[1] == doctest::Approx(2.0));
  CHECK(smoothed[2] == doctest::Approx(3.0));
  CHECK(smoothed[3] == doctest::Approx(3.5));
}
