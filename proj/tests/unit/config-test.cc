// tests/unit/config-test.cc

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

#include "vowelkit/config.h"

#include <filesystem>
#include <fstream>

#include "doctest.h"

using namespace vowelkit;

TEST_CASE("defaults carry the analysis conditions") {
  const PipelineConfig config = DefaultConfig();
  CHECK(config.dsp.sample_rate == 8000);
  CHECK(config.dsp.pre_emphasis == 0.98);
  CHECK(config.dsp.frame_length == 200);
  CHECK(config.dsp.frame_shift == 100);
  CHECK(config.gmm.vowel_mixtures == 80);
  CHECK(config.gmm.nonvowel_mixtures == 170);
  CHECK(config.fusion.energy == 0.3);
  CHECK(config.fusion.gmm == 0.5);
  CHECK(config.fusion.svm == 0.2);
  CHECK(config.train_fraction == 0.8);
  CHECK(config.svm.grid.c_values == Vec{0.1, 1.0, 10.0, 100.0});
  CHECK(config.svm.grid.sigma_values == Vec{0.5, 1.0, 2.0, 4.0});
  config.Validate();

  const PipelineConfig synthetic = SyntheticDefaultConfig();
  CHECK(synthetic.gmm.vowel_mixtures == 8);
  CHECK(synthetic.gmm.nonvowel_mixtures == 17);
  CHECK(synthetic.dsp.sample_rate == 8000);
  synthetic.Validate();
}

TEST_CASE("config json round-trips semantically") {
  namespace fs = std::filesystem;
  PipelineConfig config = SyntheticDefaultConfig();
  config.seed = 777;
  config.corpus.num_utterances = 12;
  config.gating.priors = std::make_pair(0.4, 0.6);

  const fs::path path = fs::temp_directory_path() / "vowelkit-config-test.json";
  SaveConfig(path.string(), config);
  const PipelineConfig loaded = LoadConfig(path.string());

  CHECK(loaded.seed == config.seed);
  CHECK(loaded.corpus.num_utterances == 12);
  CHECK(loaded.fusion.energy == 0.3);
  CHECK(loaded.fusion.gmm == 0.5);
  CHECK(loaded.fusion.svm == 0.2);
  CHECK(loaded.gmm.vowel_mixtures == config.gmm.vowel_mixtures);
  REQUIRE(loaded.gating.priors.has_value());
  CHECK(loaded.gating.priors->first == 0.4);
  CHECK(loaded.corpus.formants_hz.at(VowelClass::kA)[0] == 700.0);

  // Serialize again; the documents must be identical.
  CHECK(ConfigToJson(loaded) == ConfigToJson(config));
  fs::remove(path);
}

TEST_CASE("config parser accepts comments and rejects unknown keys") {
  const std::string with_comment =
      "{\n// front end\n\"dsp\": {\"sample_rate\": 8000}\n}";
  const PipelineConfig parsed = ConfigFromJson(with_comment);
  CHECK(parsed.dsp.sample_rate == 8000);

  CHECK_THROWS_WITH_AS(ConfigFromJson("{\"dsp\": {\"sample_raet\": 8000}}"),
                       doctest::Contains("sample_raet"), std::runtime_error);
  CHECK_THROWS(ConfigFromJson("{\"fusion\": {\"weight_energy\": 0.9}}"));
}

TEST_CASE("dsp hash tracks only front-end fields") {
  PipelineConfig a = DefaultConfig();
  PipelineConfig b = DefaultConfig();
  b.gmm.vowel_mixtures = 3;  // not a dsp field
  CHECK(DspConfigHash(a.dsp) == DspConfigHash(b.dsp));
  b.dsp.frame_shift = 80;
  CHECK(DspConfigHash(a.dsp) != DspConfigHash(b.dsp));
}
