// tests/unit/corpus-test.cc

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

#include "vowelkit/corpus.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "doctest.h"
#include "vowelkit/fft.h"
#include "vowelkit/pipeline.h"

using namespace vowelkit;

namespace {

namespace fs = std::filesystem;

double PeakFrequency(const Vec& samples, double lo_hz, double hi_hz,
                     int rate = 8000) {
  const int nfft = 2048;
  REQUIRE(samples.size() >= static_cast<size_t>(nfft));
  const Vec power = PowerSpectrum(
      std::span<const double>(samples.data(), nfft), nfft);
  const double bin_hz = static_cast<double>(rate) / nfft;
  int best = -1;
  for (int k = 0; k <= nfft / 2; ++k) {
    const double f = k * bin_hz;
    if (f < lo_hz || f > hi_hz) continue;
    if (best < 0 || power[k] > power[best]) best = k;
  }
  REQUIRE(best >= 0);
  return best * bin_hz;
}

}  // namespace

TEST_CASE("synthesized vowels put their peaks at the formants") {
  SynthSpec spec;
  spec.formants_hz = {700.0, 1200.0, 2500.0};
  spec.formants_end_hz = spec.formants_hz;
  spec.pitch_hz = 100.0;  // harmonics at exactly 700 and 1200
  spec.duration_s = 0.5;
  spec.noise_snr_db = 40.0;
  const AudioBuffer audio = SynthesizeVowel(spec, 42);
  REQUIRE(audio.samples.size() == 4000);

  const Vec middle(audio.samples.begin() + 1000, audio.samples.begin() + 3048);
  CHECK(std::abs(PeakFrequency(middle, 450.0, 950.0) - 700.0) <= 50.0);
  CHECK(std::abs(PeakFrequency(middle, 1000.0, 1450.0) - 1200.0) <= 50.0);
}

TEST_CASE("synthesis argument validation and determinism") {
  SynthSpec spec;
  SUBCASE("zero duration") {
    spec.duration_s = 0.0;
    CHECK_THROWS(SynthesizeVowel(spec, 1));
  }
  SUBCASE("formant at the nyquist frequency") {
    spec.formants_hz = {700.0, 1200.0, 4000.0};
    CHECK_THROWS(SynthesizeVowel(spec, 1));
  }
  SUBCASE("non-increasing formants") {
    spec.formants_hz = {700.0, 700.0, 2500.0};
    CHECK_THROWS(SynthesizeVowel(spec, 1));
  }
  SUBCASE("same spec and seed give identical samples") {
    const AudioBuffer a = SynthesizeVowel(spec, 99);
    const AudioBuffer b = SynthesizeVowel(spec, 99);
    CHECK(a.samples == b.samples);
    const AudioBuffer c = SynthesizeVowel(spec, 100);
    CHECK(a.samples != c.samples);
  }
}

TEST_CASE("corpus generation structure") {
  SUBCASE("one vowel, one utterance") {
    CorpusConfig config;
    config.num_utterances = 1;
    config.vowels = {VowelClass::kO};
    const auto corpus = GenerateCorpus(config, 5);
    REQUIRE(corpus.size() == 1);
    REQUIRE(corpus[0].labels.size() == 1);
    CHECK(corpus[0].labels[0].vowel == VowelClass::kO);
    CHECK(corpus[0].labels[0].end_s <= corpus[0].audio.DurationSeconds());
  }
  SUBCASE("every class appears once per utterance") {
    CorpusConfig config;
    config.num_utterances = 6;
    const auto corpus = GenerateCorpus(config, 6);
    REQUIRE(corpus.size() == 6);
    std::map<VowelClass, int> counts;
    for (const auto& utt : corpus) {
      CHECK(utt.labels.size() == 8);
      for (const auto& label : utt.labels) {
        REQUIRE(label.vowel.has_value());
        ++counts[*label.vowel];
        CHECK(label.end_s > label.start_s);
      }
      for (size_t i = 1; i < utt.labels.size(); ++i)
        CHECK(utt.labels[i].start_s >= utt.labels[i - 1].end_s);
    }
    for (VowelClass v : kAllVowels) CHECK(counts[v] == 6);
  }
  SUBCASE("generation is deterministic per seed") {
    CorpusConfig config;
    config.num_utterances = 2;
    const auto a = GenerateCorpus(config, 7);
    const auto b = GenerateCorpus(config, 7);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i)
      CHECK(a[i].audio.samples == b[i].audio.samples);
  }
}

TEST_CASE("generated classes are separated in feature space") {
  CorpusConfig config;
  config.num_utterances = 10;
  const auto corpus = GenerateCorpus(config, 11);
  DspConfig dsp;

  std::map<VowelClass, Rows> frames_by_class;
  for (const auto& utt : corpus) {
    const AnalyzedUtterance analyzed = AnalyzeUtterance(utt, dsp);
    for (const auto& seg : analyzed.segments)
      for (int t = seg.start_frame; t < seg.end_frame; ++t) {
        // Compare on the static cepstra only.
        Vec mfcc(analyzed.features[t].mfcc);
        frames_by_class[seg.label].push_back(std::move(mfcc));
      }
  }
  REQUIRE(frames_by_class.size() == 8);

  std::map<VowelClass, Vec> mean;
  std::map<VowelClass, double> trace;
  for (const auto& [vowel, rows] : frames_by_class) {
    Vec mu(12, 0.0);
    for (const Vec& row : rows)
      for (int d = 0; d < 12; ++d) mu[d] += row[d];
    for (double& v : mu) v /= rows.size();
    double tr = 0.0;
    for (const Vec& row : rows)
      for (int d = 0; d < 12; ++d) {
        const double diff = row[d] - mu[d];
        tr += diff * diff;
      }
    trace[vowel] = tr / rows.size();
    mean[vowel] = std::move(mu);
  }
  for (VowelClass a : kAllVowels) {
    for (VowelClass b : kAllVowels) {
      if (a >= b) continue;
      const double d2 = SquaredDistance(mean[a], mean[b]);
      const double pooled = std::sqrt(0.5 * (trace[a] + trace[b]));
      CHECK(std::sqrt(d2) >= pooled);
    }
  }
}

TEST_CASE("corpus split") {
  CorpusConfig config;
  config.num_utterances = 10;
  const auto corpus = GenerateCorpus(config, 13);

  const auto [train, test] = SplitCorpus(corpus, 0.8, 17);
  CHECK(train.size() == 8);
  CHECK(test.size() == 2);

  // Deterministic per seed.
  const auto [train2, test2] = SplitCorpus(corpus, 0.8, 17);
  REQUIRE(train2.size() == train.size());
  for (size_t i = 0; i < train.size(); ++i)
    CHECK(train2[i].id == train[i].id);

  // Disjoint, exhaustive, stratified.
  std::set<std::string> train_ids, test_ids;
  for (const auto& utt : train) train_ids.insert(utt.id);
  for (const auto& utt : test) test_ids.insert(utt.id);
  CHECK(train_ids.size() + test_ids.size() == corpus.size());
  for (const auto& id : test_ids) CHECK(train_ids.count(id) == 0);

  std::set<VowelClass> test_classes;
  for (const auto& utt : test)
    for (const auto& label : utt.labels)
      if (label.vowel.has_value()) test_classes.insert(*label.vowel);
  CHECK(test_classes.size() == 8);

  CHECK_THROWS(SplitCorpus(corpus, 0.0, 17));
  CHECK_THROWS(SplitCorpus(corpus, 1.0, 17));
}

TEST_CASE("label files round-trip and validate") {
  const fs::path dir = fs::temp_directory_path() / "vowelkit-corpus-test";
  fs::create_directories(dir);

  SUBCASE("round-trip") {
    std::vector<LabelInterval> labels{
        {0.10, 0.25, VowelClass::kA},
        {0.30, 0.40, std::nullopt},
        {0.55, 0.70, VowelClass::kEi},
    };
    const std::string path = (dir / "ok.lab").string();
    WriteLabelFile(path, labels);
    const auto loaded = ParseLabelFile(path, 1.0);
    REQUIRE(loaded.size() == 3);
    for (size_t i = 0; i < 3; ++i) {
      CHECK(loaded[i].start_s == doctest::Approx(labels[i].start_s));
      CHECK(loaded[i].end_s == doctest::Approx(labels[i].end_s));
      CHECK(loaded[i].vowel == labels[i].vowel);
    }
  }
  SUBCASE("malformed line reports its number") {
    const std::string path = (dir / "bad.lab").string();
    std::ofstream(path) << "0.1\t0.2\t/a/\nnot a label line\n";
    CHECK_THROWS_WITH_AS(ParseLabelFile(path, 1.0), doctest::Contains(":2:"),
                         std::runtime_error);
  }
  SUBCASE("overlap names both intervals") {
    const std::string path = (dir / "overlap.lab").string();
    std::ofstream(path) << "0.1\t0.3\t/a/\n0.25\t0.4\t/e/\n";
    CHECK_THROWS_WITH_AS(ParseLabelFile(path, 1.0),
                         doctest::Contains("overlapping"), std::runtime_error);
  }
  SUBCASE("out of range") {
    const std::string path = (dir / "range.lab").string();
    std::ofstream(path) << "0.5\t2.0\t/a/\n";
    CHECK_THROWS(ParseLabelFile(path, 1.0));
  }
  fs::remove_all(dir);
}

TEST_CASE("save and reload an utterance within quantization error") {
  const fs::path dir = fs::temp_directory_path() / "vowelkit-roundtrip-test";
  fs::create_directories(dir);

  CorpusConfig config;
  config.num_utterances = 1;
  const auto corpus = GenerateCorpus(config, 19);
  SaveUtterance(dir.string(), corpus[0]);

  const LabeledUtterance loaded =
      LoadLabeledWav((dir / (corpus[0].id + ".wav")).string(),
                     (dir / (corpus[0].id + ".lab")).string());
  REQUIRE(loaded.audio.samples.size() == corpus[0].audio.samples.size());
  for (size_t i = 0; i < loaded.audio.samples.size(); ++i)
    CHECK(std::abs(loaded.audio.samples[i] - corpus[0].audio.samples[i]) <=
          1.0 / 32767.0);
  REQUIRE(loaded.labels.size() == corpus[0].labels.size());
  for (size_t i = 0; i < loaded.labels.size(); ++i)
    CHECK(loaded.labels[i].vowel == corpus[0].labels[i].vowel);

  // Manifest round-trip.
  const std::string manifest = (dir / "manifest.tsv").string();
  WriteCorpusManifest(manifest, {{corpus[0].id + ".wav", corpus[0].id + ".lab"}});
  const auto loaded_corpus = LoadManifest(manifest);
  REQUIRE(loaded_corpus.size() == 1);
  CHECK(loaded_corpus[0].audio.samples.size() ==
        corpus[0].audio.samples.size());
  fs::remove_all(dir);
}
