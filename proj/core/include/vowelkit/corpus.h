// core/include/vowelkit/corpus.h

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

#ifndef VOWELKIT_CORPUS_H_
#define VOWELKIT_CORPUS_H_

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vowelkit/audio.h"
#include "vowelkit/common.h"
#include "vowelkit/recognizer.h"

namespace vowelkit {

/// A labeled time interval; nullopt vowel marks explicit non-vowel.
struct LabelInterval {
  double start_s = 0.0;
  double end_s = 0.0;
  std::optional<VowelClass> vowel;
};

struct LabeledUtterance {
  std::string id;
  AudioBuffer audio;
  std::vector<LabelInterval> labels;  // sorted, non-overlapping, in range
};

/// Source-filter synthesis spec: an impulse train at `pitch_hz` through
/// three cascaded resonators. For diphthong glides the formants move
/// linearly from (f1..f3) to (f1_end..f3_end) over the duration.
struct SynthSpec {
  VowelClass vowel = VowelClass::kA;
  std::array<double, 3> formants_hz = {700.0, 1200.0, 2500.0};
  std::array<double, 3> formants_end_hz = {700.0, 1200.0, 2500.0};
  double pitch_hz = 120.0;
  double duration_s = 0.2;
  double noise_snr_db = 25.0;
  int sample_rate = 8000;
};

/// Deterministic per seed. Errors on empty duration or a formant at or
/// above the Nyquist frequency.
AudioBuffer SynthesizeVowel(const SynthSpec& spec, uint64_t seed);

struct CorpusConfig {
  int num_utterances = 55;
  std::vector<VowelClass> vowels{kAllVowels.begin(), kAllVowels.end()};
  /// Steady-state formant targets for the monophthongs; diphthongs glide
  /// between their endpoint vowels (/au/: /a/->/u/, /ei/: /e/->/i/).
  std::map<VowelClass, std::array<double, 3>> formants_hz{
      {VowelClass::kA, {700.0, 1200.0, 2500.0}},
      {VowelClass::kSchwa, {650.0, 1000.0, 2400.0}},
      {VowelClass::kO, {500.0, 900.0, 2400.0}},
      {VowelClass::kE, {500.0, 1800.0, 2500.0}},
      {VowelClass::kI, {300.0, 2300.0, 3000.0}},
      {VowelClass::kU, {350.0, 800.0, 2300.0}}};
  double formant_jitter = 0.04;  // relative, per formant instance
  double pitch_min_hz = 90.0;
  double pitch_max_hz = 220.0;
  double vowel_duration_min_s = 0.12;
  double vowel_duration_max_s = 0.22;
  double filler_duration_min_s = 0.12;
  double filler_duration_max_s = 0.30;
  double noise_snr_db = 25.0;
  int sample_rate = 8000;
};

/// Utterances alternating non-vowel fillers (silence, noise bursts,
/// high-band fricative-like noise) with synthesized vowels; each utterance
/// contains every configured vowel once, in shuffled order. Labels are
/// exact by construction.
std::vector<LabeledUtterance> GenerateCorpus(const CorpusConfig& config,
                                             uint64_t seed);

/// Utterance-level split, deterministic per seed, stratified so every
/// configured vowel appears on both sides; errors when that is impossible.
std::pair<std::vector<LabeledUtterance>, std::vector<LabeledUtterance>>
SplitCorpus(const std::vector<LabeledUtterance>& corpus, double train_fraction,
            uint64_t seed);

/// Label file: one interval per line, "start_s<TAB>end_s<TAB>label",
/// '#' comments. Errors carry line numbers; overlaps name both intervals.
std::vector<LabelInterval> ParseLabelFile(const std::string& path,
                                          double audio_duration_s);
void WriteLabelFile(const std::string& path,
                    const std::vector<LabelInterval>& labels);

LabeledUtterance LoadLabeledWav(const std::string& wav_path,
                                const std::string& label_path,
                                int expected_rate = 8000);

/// Saves <dir>/<id>.wav and <dir>/<id>.lab.
void SaveUtterance(const std::string& dir, const LabeledUtterance& utterance);

/// Manifest: TSV lines "wav_path<TAB>label_path", '#' comments.
void WriteCorpusManifest(const std::string& path,
                         const std::vector<std::pair<std::string, std::string>>&
                             wav_label_pairs);
std::vector<std::pair<std::string, std::string>> ReadCorpusManifest(
    const std::string& path);

/// Loads every (wav, label) pair listed in a manifest.
std::vector<LabeledUtterance> LoadManifest(const std::string& manifest_path,
                                           int expected_rate = 8000);

}  // namespace vowelkit

#endif  // VOWELKIT_CORPUS_H_
